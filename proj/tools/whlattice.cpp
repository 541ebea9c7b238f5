// whlattice: cardinal and semi-cardinal lattice interpolation from the shell.
// exit status: 0 all checks pass, 1 a check failed, 2 usage or config error

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "whlattice/cli/commands.hpp"

namespace cli = whl::cli;

int main(int argc, char** argv) {
  CLI::App app{"cardinal and semi-cardinal interpolation on lattices"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::string> kernel, halfspace, data, extension, out_dir, cache_dir;
  std::optional<int> N, M, eval_radius, window, buffer;
  std::optional<double> tail_tol, residual_tol, positivity_floor, leak_tol, trim_tol;
  std::vector<int> j, probes;
  std::vector<double> x;
  bool semi = false, no_cache = false, plot = false, timings = false;

  app.add_option("-c,--config", config_path, "JSON config file (flat keys)")->check(CLI::ExistingFile);
  app.add_option("--kernel", kernel, "kernel shorthand, e.g. gaussian:c=1,dim=2 or bspline:n=4");
  app.add_option("--halfspace", halfspace, "coordinate[:axis=K], lex[:p1,..,pd] or graded_lex");
  app.add_option("-N,--symbol-radius", N, "radius of the reported symbol coefficients");
  app.add_option("-M,--grid", M, "torus grid points per axis");
  app.add_option("--eval-radius", eval_radius, "fixed expansion radius for chi");
  app.add_option("--tail-tol", tail_tol, "tail mass tolerance of the coefficient expansions");
  app.add_option("--residual-tol", residual_tol, "largest accepted factorization residual");
  app.add_option("--positivity-floor", positivity_floor, "symbol values at or below this are rejected");
  app.add_option("--leak-tol", leak_tol, "allowed coefficient mass outside H");
  app.add_option("--trim-tol", trim_tol, "drop reported coefficients below this");
  app.add_option("--j", j, "semi-cardinal index, comma separated")->delimiter(',');
  app.add_option("--x", x, "evaluation point(s), packed, comma separated")->delimiter(',');
  app.add_option("--probes", probes, "j_d values (coordinate) or n of the exhausting sequence")->delimiter(',');
  app.add_option("--window", window, "dense window radius for oracle and Cholesky checks");
  app.add_option("--buffer", buffer, "interior buffer of the dense window");
  app.add_flag("--semi", semi, "use the half-space system");
  app.add_option("--data", data, "data CSV with header k_1..k_d,y");
  app.add_option("--extension", extension, "zero or periodic");
  app.add_option("-o,--out", out_dir, "output directory");
  app.add_option("--cache-dir", cache_dir, "factorization cache (default WHLATTICE_CACHE or ~/.cache/whlattice)");
  app.add_flag("--no-cache", no_cache, "always recompute the factorization");
  app.add_flag("--emit-plot-data", plot, "write CSVs shaped for external plotting");
  app.add_flag("--timings", timings, "add wall-clock timings to the JSON report");

  std::string cache_action = "list";
  for (const auto& name : cli::command_names()) {
    static const std::map<std::string, std::string> blurb{
        {"symbol", "kernel symbol coefficients and positivity"},
        {"factorize", "inverse symbol and its half-space factor"},
        {"lagrange", "evaluate chi or chi_j at --x"},
        {"interpolate", "interpolate lattice data from --data"},
        {"converge", "semi-cardinal to cardinal gap at --probes"},
        {"decay", "decay fits of the inverse coefficients"},
        {"verify", "oracle comparisons and identity checks"},
        {"cache", "list, clear or key the factorization cache"}};
    const auto it = blurb.find(name);
    auto* sub = app.add_subcommand(name, it == blurb.end() ? "" : it->second);
    if (name == "cache") sub->add_option("action", cache_action, "list, clear or key");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kUsage;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();

  try {
    cli::RunConfig cfg = config_path.empty() ? cli::RunConfig{} : cli::load_config(config_path);
    nlohmann::json over = nlohmann::json::object();
    if (kernel) over["kernel"] = *kernel;
    if (halfspace) over["halfspace"] = *halfspace;
    if (N) over["symbol_radius"] = *N;
    if (M) over["grid"] = *M;
    if (eval_radius) over["eval_radius"] = *eval_radius;
    if (tail_tol) over["tail_tol"] = *tail_tol;
    if (residual_tol) over["residual_tol"] = *residual_tol;
    if (positivity_floor) over["positivity_floor"] = *positivity_floor;
    if (leak_tol) over["leak_tol"] = *leak_tol;
    if (trim_tol) over["trim_tol"] = *trim_tol;
    if (!j.empty()) over["j"] = j;
    if (!x.empty()) over["x"] = x;
    if (!probes.empty()) over["probes"] = probes;
    if (window) over["window"] = *window;
    if (buffer) over["buffer"] = *buffer;
    if (semi) over["semi"] = true;
    if (data) over["data"] = *data;
    if (extension) over["extension"] = *extension;
    if (out_dir) over["out_dir"] = *out_dir;
    if (cache_dir) over["cache_dir"] = *cache_dir;
    if (no_cache) over["use_cache"] = false;
    if (plot) over["emit_plot_data"] = true;
    if (timings) over["timings"] = true;
    cli::apply_overrides(cfg, over);
    return cli::dispatch(cmd, cfg, std::cout, cache_action);
  } catch (const cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return cli::kUsage;
  } catch (const whl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return cli::kUsage;
  } catch (const whl::CapabilityError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return cli::kUsage;
  } catch (const whl::DimensionMismatch& e) {
    std::cerr << "dimension error: " << e.what() << "\n";
    return cli::kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kCheckFailed;
  }
}
