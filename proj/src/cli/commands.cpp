#include "whlattice/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "whlattice/cli/cache.hpp"

namespace whl::cli {

namespace fs = std::filesystem;

namespace {

constexpr double kDeltaTol = 1e-7;

struct Ctx {
  const RunConfig& cfg;
  Kernel kernel;
  HalfSpace H;
  SystemOptions opt;
  std::string kdesc, hdesc;
  Report report;
  Stopwatch sw;
  std::optional<FactorCache> cache;
  bool cache_hit = false;

  explicit Ctx(const RunConfig& c)
      : cfg(c),
        kernel(make_kernel(c.kernel)),
        H(make_halfspace(c.halfspace, c.kernel.dim)),
        opt(c.system),
        kdesc(kernel.describe()),
        hdesc(H.describe()) {
    report.set_config(echo(c));
    if (c.use_cache) cache.emplace(cache_dir(c));
  }

  void add(const std::string& name, double value, double bound, bool pass, ojson details = ojson::object(),
           bool with_halfspace = true) {
    report.add({name, kdesc, with_halfspace ? hdesc : "", value, bound, pass, std::move(details)});
  }
  void lap(const std::string& phase) { report.time(phase, sw.lap()); }

  KernelSymbol symbol() {
    auto ks = kernel_symbol(kernel, opt);
    lap("symbol");
    return ks;
  }
  WienerHopfFactor factor(const KernelSymbol& ks) {
    auto f = cached_factor(ks, H, opt, cache ? &*cache : nullptr, cache_hit);
    lap("factorize");
    return f;
  }
  fs::path out(const std::string& name) const { return fs::path(cfg.out_dir) / name; }
  int finish(const std::string& name, std::ostream& log) {
    write_atomic(out(name), report.to_json(cfg.timings).dump(2) + "\n");
    log << name << ": " << (report.pass() ? "pass" : "FAIL") << " (" << report.checks().size() << " checks)";
    if (cache) log << (cache_hit ? " [cache hit]" : "");
    log << "\n";
    return report.pass() ? kPass : kCheckFailed;
  }
};

LatticeIndex index_of(const std::vector<int>& v) { return LatticeIndex::from(v); }

LatticeIndex required_j(const Ctx& c) {
  if (c.cfg.j.empty()) throw UsageError("this command needs --j for a semi-cardinal index");
  const auto j = index_of(c.cfg.j);
  if (!c.H.contains(j)) throw UsageError("j = " + j.str() + " is not in the half-space " + c.hdesc);
  return j;
}

std::string index_csv(const LatticeIndex& k) {
  std::string s;
  for (int a = 0; a < k.dim(); ++a) s += std::to_string(k[a]) + ",";
  return s;
}

std::string header(int d, const std::string& prefix) {
  std::string s;
  for (int a = 1; a <= d; ++a) s += prefix + std::to_string(a) + ",";
  return s;
}

ojson factor_json(const WienerHopfFactor& f) {
  ojson o;
  o["grid"] = f.grid;
  o["radius"] = f.gamma.radius();
  o["residual"] = f.factorization_residual;
  o["support_leak"] = f.support_leak;
  o["imag_residue"] = f.imag_residue;
  o["trim_tail"] = f.trim_tail;
  o["lambda0"] = f.lambda0;
  o["gamma_wiener"] = f.gamma_wiener();
  o["omega_wiener"] = f.omega_wiener;
  return o;
}

// lattice probes: boundary, mid and deep for a coordinate half-space, the
// exhausting sequence for an ordered one
struct Probe {
  int n;
  LatticeIndex j;
};

std::vector<Probe> probes(const Ctx& c) {
  std::vector<int> ps = c.cfg.probes;
  if (ps.empty()) ps = c.H.is_ordered() ? std::vector<int>{0, 1, 2, 4, 8} : std::vector<int>{0, 1, 2, 5, 10, 20};
  std::vector<Probe> out;
  for (int p : ps) {
    if (p < 0) throw UsageError("probes must be >= 0");
    out.push_back({p, c.H.is_ordered() ? exhausting_element(c.H, p) : LatticeIndex::unit(c.H.dim(), c.H.axis(), p)});
  }
  return out;
}

std::vector<double> axis_line(int d, double center, double half, double step) {
  std::vector<double> pts;
  for (double t = -half; t <= half + 1e-12; t += step) {
    for (int a = 0; a < d; ++a) pts.push_back(a == 0 ? center + t : 0.0);
  }
  return pts;
}

void write_line_csv(const fs::path& path, const std::vector<double>& pts, const std::vector<double>& vals, int d) {
  std::string s = header(d, "x_") + "value\n";
  for (std::size_t p = 0; p < vals.size(); ++p) {
    for (int a = 0; a < d; ++a) s += fmt17(pts[p * d + a]) + ",";
    s += fmt17(vals[p]) + "\n";
  }
  write_atomic(path, s);
}

std::vector<DecaySample> samples_about(const SymbolCoefficients& c, const LatticeIndex& center) {
  std::vector<DecaySample> out;
  const Box& b = c.box();
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto k = b.index(i);
    if (k == center) continue;
    out.push_back({(k - center).norm(), c.values()[i]});
  }
  return out;
}

// largest |v| per unit shell of distance
std::vector<DecaySample> envelope(const std::vector<DecaySample>& s) {
  std::map<long, DecaySample> best;
  for (const auto& x : s) {
    const long shell = static_cast<long>(std::floor(x.dist));
    auto [it, fresh] = best.try_emplace(shell, x);
    if (!fresh && std::abs(x.value) > std::abs(it->second.value)) it->second = x;
  }
  std::vector<DecaySample> out;
  for (const auto& [k, v] : best) out.push_back(v);
  return out;
}

void write_samples_csv(const fs::path& path, const std::vector<DecaySample>& s) {
  std::string t = "dist,value\n";
  for (const auto& x : s) t += fmt17(x.dist) + "," + fmt17(x.value) + "\n";
  write_atomic(path, t);
}

ojson fit_json(const DecayFit& f) {
  ojson o;
  o["model"] = to_string(f.model);
  o["rate"] = f.rate;
  o["r_squared"] = f.r_squared;
  o["range"] = {f.lo, f.hi};
  o["samples"] = f.samples;
  o["verdict"] = to_string(f.verdict);
  return o;
}

// ---------------------------------------------------------------- commands

int cmd_symbol(Ctx& c, std::ostream& log) {
  std::optional<KernelSymbol> kso;
  try {
    kso.emplace(c.symbol());
  } catch (const SymbolNotPositive& e) {
    c.add("symbol_positive", e.min_value, e.floor, false, {}, false);
    return c.finish("symbol.json", log);
  }
  const KernelSymbol& ks = *kso;
  write_atomic(c.out("sigma.csv"), to_csv(ks.sigma));
  ojson s;
  s["min"] = ks.min_value;
  s["sample_radius"] = ks.sample_radius;
  s["sample_tail"] = ks.sample_tail;
  s["sigma_wiener"] = ks.sigma.wiener_norm();
  c.report.set("symbol", s);
  c.add("symbol_positive", ks.min_value, c.opt.positivity_floor, ks.min_value >= c.opt.positivity_floor, {}, false);
  if (c.cfg.emit_plot_data) {
    const int M = ks.values.points();
    std::string t = "t,sigma\n";
    for (int i = 0; i < M; ++i)
      t += fmt17(2 * std::numbers::pi * i / M) + "," +
           fmt17(ks.values[ks.values.slot(LatticeIndex::unit(c.kernel.dim(), 0, i))].real()) + "\n";
    write_atomic(c.out("symbol_axis.csv"), t);
  }
  return c.finish("symbol.json", log);
}

int cmd_factorize(Ctx& c, std::ostream& log) {
  const auto ks = c.symbol();
  std::optional<WienerHopfFactor> fo;
  try {
    fo.emplace(c.factor(ks));
  } catch (const ResidualTooLarge& e) {
    c.add("factorization_residual", e.residual, e.tol, false);
    return c.finish("metadata.json", log);
  }
  const WienerHopfFactor& f = *fo;
  write_atomic(c.out("gamma.csv"), to_csv(f.gamma));
  c.report.set("factor", factor_json(f));
  const auto rep = verify_factorization(ks.values, f);
  c.add("factorization_residual", f.factorization_residual, c.opt.residual_tol,
        f.factorization_residual <= c.opt.residual_tol);
  c.add("support_leak", f.support_leak, c.opt.leak_tol, f.support_leak <= c.opt.leak_tol);
  c.add("wiener_norms", rep.omega_wiener, rep.plus_wiener_sq, rep.norms_consistent);
  return c.finish("metadata.json", log);
}

int cmd_lagrange(Ctx& c, std::ostream& log) {
  const auto ks = c.symbol();
  const int d = c.kernel.dim();
  if (!c.cfg.semi) {
    const CardinalSystem cs(ks, c.opt);
    c.lap("cardinal");
    write_atomic(c.out("a.csv"), to_csv(cs.omega()));
    ojson s;
    s["a0"] = cs.coefficient(LatticeIndex(d));
    s["eval_radius"] = cs.eval_radius();
    s["omega_wiener"] = cs.omega_wiener();
    s["min_symbol"] = cs.min_symbol();
    s["aliasing_mass"] = cs.aliasing_mass();
    if (!c.cfg.x.empty()) s["chi"] = cs.lagrange().eval_many(c.cfg.x);
    c.report.set("cardinal", s);
    const Box box(d, 10);
    double dev = 0;
    for (std::size_t i = 0; i < box.size(); ++i) {
      const auto j = box.index(i);
      dev = std::max(dev, std::abs(cs.chi_at(j) - (j.is_zero() ? 1.0 : 0.0)));
    }
    c.add("delta_conditions", dev, kDeltaTol, dev < kDeltaTol, {}, false);
    if (c.cfg.emit_plot_data && c.kernel.full_eval()) {
      const auto pts = axis_line(d, 0.0, 10.0, 0.1);
      write_line_csv(c.out("lagrange_axis.csv"), pts, cs.lagrange().eval_many(pts), d);
    }
    return c.finish("lagrange.json", log);
  }
  const auto j = required_j(c);
  const SemiCardinalSystem sc(ks, c.factor(ks), c.opt);
  const auto col = sc.column(j);
  const KernelExpansion chij(c.kernel, col, c.opt.tail_tol);
  c.lap("semicardinal");
  write_atomic(c.out("column.csv"), to_csv(col));
  ojson s;
  s["j"] = c.cfg.j;
  s["a_jj"] = col[j];
  s["column_wiener"] = col.wiener_norm();
  s["working_radius"] = sc.working_radius();
  if (!c.cfg.x.empty()) s["chi_j"] = chij.eval_many(c.cfg.x);
  c.report.set("semicardinal", s);
  double dev = 0;
  for (const auto& k : c.H.window(j.max_abs() + 10)) dev = std::max(dev, std::abs(chij.at(k) - (k == j ? 1.0 : 0.0)));
  c.add("delta_conditions", dev, kDeltaTol, dev < kDeltaTol);
  if (c.cfg.emit_plot_data && c.kernel.full_eval()) {
    const auto pts = axis_line(d, j[0], 10.0, 0.1);
    write_line_csv(c.out("lagrange_axis.csv"), pts, chij.eval_many(pts), d);
  }
  return c.finish("lagrange.json", log);
}

int cmd_interpolate(Ctx& c, std::ostream& log) {
  if (c.cfg.data.empty()) throw UsageError("interpolate needs --data");
  if (c.cfg.x.empty()) throw UsageError("interpolate needs --x");
  if (!c.kernel.full_eval()) throw CapabilityError(c.kernel.name() + " cannot be evaluated off the lattice");
  const int d = c.kernel.dim();
  DataWindow w = read_data_csv(c.cfg.data, d);
  w.extension = c.cfg.extension == "periodic" ? Extension::Periodic : Extension::Zero;
  const auto ks = c.symbol();
  const std::size_t n = c.cfg.x.size() / static_cast<std::size_t>(d);
  std::vector<double> lag(n, 0.0), coef;
  if (!c.cfg.semi) {
    const CardinalSystem cs(ks, c.opt);
    for (std::size_t p = 0; p < n; ++p)
      lag[p] = cs.interpolate(w, std::span<const double>(c.cfg.x).subspan(p * d, d)).lagrange;
    coef = cs.interpolate_many(w, c.cfg.x);
  } else {
    if (w.extension != Extension::Zero) throw UsageError("semi-cardinal interpolation takes zero-extended data");
    const SemiCardinalSystem sc(ks, c.factor(ks), c.opt);
    coef = KernelExpansion(c.kernel, sc.data_coefficients(w), c.opt.tail_tol).eval_many(c.cfg.x);
    for (std::size_t i = 0; i < w.points.size(); ++i) {
      if (w.values[i] == 0.0) continue;
      const auto v = sc.lagrange(w.points[i]).eval_many(c.cfg.x);
      for (std::size_t p = 0; p < n; ++p) lag[p] += w.values[i] * v[p];
    }
  }
  c.lap("interpolate");
  std::string t = header(d, "x_") + "lagrange,coefficient\n";
  double dev = 0, scale = 1;
  for (std::size_t p = 0; p < n; ++p) {
    for (int a = 0; a < d; ++a) t += fmt17(c.cfg.x[p * d + a]) + ",";
    t += fmt17(lag[p]) + "," + fmt17(coef[p]) + "\n";
    dev = std::max(dev, std::abs(lag[p] - coef[p]));
    scale = std::max(scale, std::abs(lag[p]));
  }
  write_atomic(c.out("interpolate.csv"), t);
  c.add("routes_agree", dev, 1e-9 * scale, dev <= 1e-9 * scale, {}, c.cfg.semi);
  return c.finish("interpolate.json", log);
}

int cmd_converge(Ctx& c, std::ostream& log) {
  if (!c.kernel.full_eval()) throw CapabilityError(c.kernel.name() + " cannot be evaluated off the lattice");
  const auto ks = c.symbol();
  const CardinalSystem cs(ks, c.opt);
  const SemiCardinalSystem sc(ks, c.factor(ks), c.opt);
  const EtaFunction eta(c.kernel, sc.factor(), c.opt.tail_tol);
  const auto ps = probes(c);
  std::vector<LatticeIndex> js;
  for (const auto& p : ps) js.push_back(p.j);
  const SampleGrid grid{c.kernel.dim()};
  const auto gaps = convergence_gap(eta, cs, sc, js, grid);
  c.lap("converge");
  const int d = c.kernel.dim();
  std::string t = "n," + header(d, "j_") + "gap,bound,gamma_tail\n";
  bool monotone = true;
  for (std::size_t q = 0; q < gaps.size(); ++q) {
    const auto& g = gaps[q];
    t += std::to_string(ps[q].n) + "," + index_csv(g.j) + fmt17(g.gap) + "," + fmt17(g.bound) + "," + fmt17(g.gamma_tail) +
         "\n";
    ojson det;
    det["j"] = g.j.str();
    det["sup_eta"] = g.sup_eta;
    c.add("gap_bound", g.gap, g.bound + 1e-8, g.gap <= g.bound + 1e-8, det);
    if (q > 0 && g.bound > gaps[q - 1].bound * (1 + 1e-12)) monotone = false;
  }
  write_atomic(c.out("converge.csv"), t);
  ojson e;
  e["sup_eta_sampled"] = gaps.empty() ? 0.0 : gaps.front().sup_eta;
  e["eta_bound"] = eta.bound();
  c.report.set("eta", e);
  c.add("bound_monotone", monotone ? 0.0 : 1.0, 0.0, monotone);
  return c.finish("converge.json", log);
}

int cmd_decay(Ctx& c, std::ostream& log) {
  const auto ks = c.symbol();
  const int d = c.kernel.dim();
  const CardinalSystem cs(ks, c.opt);
  const SemiCardinalSystem sc(ks, c.factor(ks), c.opt);
  const auto ps = probes(c);
  const LatticeIndex j = c.cfg.j.empty() ? ps[std::min<std::size_t>(3, ps.size() - 1)].j : required_j(c);
  const LatticeIndex zero(d);
  const std::map<std::string, std::vector<DecaySample>> sets = {
      {"a", samples_about(cs.omega(), zero)},
      {"gamma", samples_about(sc.factor().gamma, zero)},
      {"a_kj", samples_about(sc.column(j), j)}};
  c.lap("decay");
  const auto* alg = std::get_if<Algebraic>(&c.kernel.decay());
  for (const auto& [name, s] : sets) {
    const auto env = envelope(s);
    if (c.cfg.emit_plot_data) write_samples_csv(c.out("decay_" + name + ".csv"), env);
    ojson det;
    try {
      if (alg) {
        const auto fit = fit_decay(env, DecayModel::Algebraic);
        const auto rings = dyadic_rings(s, alg->rate);
        det = fit_json(fit);
        det["ring_sup"] = rings.sup;
        det["ring_edges"] = rings.edges;
        const bool finite = std::all_of(rings.sup.begin(), rings.sup.end(), [](double v) { return std::isfinite(v); });
        c.add("decay_" + name, rings.variation, 0.1, finite && rings.variation < 0.1, det, name != "a");
      } else {
        const auto fit = fit_decay(env, DecayModel::Exponential);
        det = fit_json(fit);
        c.add("decay_" + name, fit.r_squared, 0.99, fit.r_squared > 0.99 && fit.rate > 0, det, name != "a");
      }
    } catch (const InsufficientSamples& e) {
      det["error"] = e.what();
      c.add("decay_" + name, 0.0, 0.0, false, det, name != "a");
    }
  }
  c.report.set("probe", j.str());
  return c.finish("decay.json", log);
}

int cmd_cache(const RunConfig& cfg, const std::string& action, std::ostream& log) {
  const FactorCache cache(cache_dir(cfg));
  if (action == "list" || action.empty()) {
    log << "cache " << cache.dir() << "\n";
    for (const auto& k : cache.keys()) log << k << "\n";
    return kPass;
  }
  if (action == "clear") {
    log << "removed " << cache.clear() << " entries from " << cache.dir() << "\n";
    return kPass;
  }
  if (action == "key") {
    log << cache_key(make_kernel(cfg.kernel), make_halfspace(cfg.halfspace, cfg.kernel.dim), cfg.system) << "\n";
    return kPass;
  }
  throw UsageError("cache action must be list, clear or key");
}

}  // namespace

DataWindow read_data_csv(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open data file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw UsageError("data file '" + path + "' is empty");
  const int cols = static_cast<int>(std::count(line.begin(), line.end(), ',')) + 1;
  if (cols != dim + 1) throw UsageError("data header needs k_1..k_" + std::to_string(dim) + ",y");
  DataWindow w;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    LatticeIndex k(dim);
    try {
      for (int a = 0; a < dim; ++a) {
        std::getline(ls, cell, ',');
        k[a] = std::stoi(cell);
      }
      std::getline(ls, cell, ',');
      w.values.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": malformed data row");
    }
    w.points.push_back(k);
  }
  if (w.points.empty()) throw UsageError("data file '" + path + "' has no rows");
  return w;
}

Report verify_report(const RunConfig& cfg) {
  Ctx c(cfg);
  const int d = c.kernel.dim();
  std::optional<KernelSymbol> kso;
  try {
    kso.emplace(c.symbol());
  } catch (const SymbolNotPositive& e) {
    c.add("symbol_positive", e.min_value, e.floor, false, {}, false);
    return c.report;
  }
  const KernelSymbol& ks = *kso;
  c.add("symbol_positive", ks.min_value, c.opt.positivity_floor, true, {}, false);

  const CardinalSystem cs(ks, c.opt);
  {
    const Box box(d, 10);
    double dev = 0;
    for (std::size_t i = 0; i < box.size(); ++i) {
      const auto j = box.index(i);
      dev = std::max(dev, std::abs(cs.chi_at(j) - (j.is_zero() ? 1.0 : 0.0)));
    }
    ojson det;
    det["a0"] = cs.coefficient(LatticeIndex(d));
    det["omega_wiener"] = cs.omega_wiener();
    c.add("cardinal_delta", dev, kDeltaTol, dev < kDeltaTol, det, false);
  }
  c.lap("cardinal");

  auto fo = factor_options(c.opt);
  fo.enforce_residual = false;
  const SemiCardinalSystem sc(ks, factorize(ks.values, c.H, fo), c.opt);
  const auto& f = sc.factor();
  const auto rep = verify_factorization(ks.values, f);
  c.add("wh_residual", f.factorization_residual, c.opt.residual_tol, f.factorization_residual <= c.opt.residual_tol,
        factor_json(f));
  c.add("wh_norms", rep.omega_wiener, rep.plus_wiener_sq, rep.norms_consistent);
  c.lap("factorize");

  const auto ps = sc.probe_set();
  {
    double dev = 0;
    for (const auto& j : ps) {
      const KernelExpansion chij(c.kernel, sc.column(j), c.opt.tail_tol);
      for (const auto& k : c.H.window(j.max_abs() + 10))
        dev = std::max(dev, std::abs(chij.at(k) - (k == j ? 1.0 : 0.0)));
    }
    c.add("semi_delta", dev, kDeltaTol, dev < kDeltaTol);
    double asym = 0;
    std::vector<LatticeIndex> ks2, js2;
    for (const auto& a : ps)
      for (const auto& b : ps) {
        ks2.push_back(a);
        js2.push_back(b);
      }
    const auto ab = sc.coefficients(ks2, js2), ba = sc.coefficients(js2, ks2);
    for (std::size_t q = 0; q < ab.size(); ++q) asym = std::max(asym, std::abs(ab[q] - ba[q]));
    c.add("symmetry", asym, 1e-10, asym <= 1e-10);
    const double schur = sc.schur_norm(ps), g2 = f.gamma_wiener() * f.gamma_wiener();
    c.add("schur_bound", schur, g2 + 1e-6, schur <= g2 + 1e-6);
  }
  c.lap("semicardinal");

  const int n = cfg.dense_window(), b = cfg.dense_buffer();
  try {
    const auto oc = oracle_compare(cs, n, b);
    c.add("oracle_cardinal", oc.deviation, 1e-6, oc.deviation < 1e-6, {{"rcond", oc.rcond}}, false);
    const auto os = oracle_compare(sc, n, b);
    c.add("oracle_semicardinal", os.deviation, 1e-6, os.deviation < 1e-6, {{"rcond", os.rcond}});
    const auto ch = sc.cholesky_residual(n, b);
    c.add("cholesky", ch.residual, 1e-6, ch.residual < 1e-6, {{"unknowns", ch.unknowns}});
    if (c.H.is_ordered())
      c.add("triangular", ch.triangular_violation, 0.0, ch.triangular);
  } catch (const WindowTooLarge& e) {
    c.add("oracle_cardinal", 0, 0, false, {{"error", e.what()}}, false);
  }
  c.lap("oracles");

  if (c.kernel.full_eval()) {
    const EtaFunction eta(c.kernel, f, c.opt.tail_tol);
    const SampleGrid grid{d};
    const double r1 = chi_via_eta(eta, cs, grid);
    c.add("eta_chi", r1, 1e-7, r1 < 1e-7);
    double r2 = 0;
    for (const auto& j : ps) r2 = std::max(r2, chij_via_eta(eta, sc, j, grid));
    c.add("eta_chij", r2, 1e-7, r2 < 1e-7);
    for (const auto& g : convergence_gap(eta, cs, sc, ps, grid))
      c.add("gap_bound", g.gap, g.bound + 1e-8, g.gap <= g.bound + 1e-8, {{"j", g.j.str()}});
    c.lap("eta");
    const auto leb = cs.lebesgue();
    // rounding slack only; the estimate is a max of sums that can land one ulp above an exact bound
    c.add("lebesgue", leb.estimate, leb.bound, leb.estimate <= leb.bound * (1 + 1e-12), {}, false);
    c.lap("lebesgue");
  }

  if (d == 1 && (std::holds_alternative<family::Gaussian>(c.kernel.family()) ||
                 std::holds_alternative<family::Matern>(c.kernel.family()))) {
    const NativeQuadratureSpec q(c.kernel);
    const auto id = fundamental_identity_check(q, cs, 0.3);
    c.add("fundamental_identity", id.residual, 2e-5, id.residual < 2e-5 && id.refinement_ok,
          {{"history", id.history}}, false);
    c.lap("identity");
  }
  return c.report;
}

int dispatch(const std::string& cmd, const RunConfig& cfg, std::ostream& log, const std::string& action) {
  cfg.validate();
  if (cmd == "cache") return cmd_cache(cfg, action, log);
  if (cmd == "verify") {
    const Report r = verify_report(cfg);
    write_atomic(fs::path(cfg.out_dir) / "report.json", r.to_json(cfg.timings).dump(2) + "\n");
    log << "report.json: " << (r.pass() ? "pass" : "FAIL") << " (" << r.checks().size() << " checks)\n";
    for (const auto& ch : r.checks())
      if (!ch.pass) log << "  failed " << ch.check << ": " << fmt17(ch.value) << " vs " << fmt17(ch.bound) << "\n";
    return r.pass() ? kPass : kCheckFailed;
  }
  Ctx c(cfg);
  if (cmd == "symbol") return cmd_symbol(c, log);
  if (cmd == "factorize") return cmd_factorize(c, log);
  if (cmd == "lagrange") return cmd_lagrange(c, log);
  if (cmd == "interpolate") return cmd_interpolate(c, log);
  if (cmd == "converge") return cmd_converge(c, log);
  if (cmd == "decay") return cmd_decay(c, log);
  throw UsageError("unknown command '" + cmd + "'");
}

}  // namespace whl::cli
