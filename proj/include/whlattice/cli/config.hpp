#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "whlattice/kernels.hpp"
#include "whlattice/lattice.hpp"
#include "whlattice/system.hpp"

namespace whl::cli {

struct KernelSpec {
  std::string family = "gaussian";
  std::map<std::string, double> params;
  int dim = 1;
};

struct RunConfig {
  KernelSpec kernel{"gaussian", {{"c", 1.0}}, 1};
  std::string halfspace = "coordinate";  // coordinate[:axis=K] | lex[:p1,p2,..] | graded_lex (order: prefix allowed)
  SystemOptions system;

  std::vector<int> j;        // semi-cardinal index
  std::vector<double> x;     // evaluation point(s), packed
  std::vector<int> probes;   // j_d values (coordinate) or n of the exhausting sequence
  int window = -1;           // dense window radius; -1 picks 60 (d=1) or 6
  int buffer = -1;           // -1 means window / 4
  bool semi = false;
  std::string data;          // CSV k_1..k_d,y
  std::string extension = "zero";
  std::string out_dir = ".";
  std::string cache_dir;     // empty: WHLATTICE_CACHE or ~/.cache/whlattice
  bool use_cache = true;
  bool emit_plot_data = false;
  bool timings = false;

  int dim() const { return kernel.dim; }
  int dense_window() const { return window >= 0 ? window : (kernel.dim == 1 ? 60 : 6); }
  int dense_buffer() const { return buffer >= 0 ? buffer : dense_window() / 4; }
  void validate() const;  // throws ConfigError
};

// flat JSON object; unknown keys are rejected with the key named
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);
// overlay: keys present in `flags` replace those of `base`
void apply_overrides(RunConfig& cfg, const nlohmann::json& flags);

nlohmann::ordered_json echo(const RunConfig& cfg);

Kernel make_kernel(const KernelSpec& spec);
HalfSpace make_halfspace(const std::string& desc, int dim);

// "gaussian:c=1,dim=2" style shorthand used by --kernel
KernelSpec parse_kernel_shorthand(const std::string& text);

std::string cache_dir(const RunConfig& cfg);

}  // namespace whl::cli
