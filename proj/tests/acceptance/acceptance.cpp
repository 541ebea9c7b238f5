// Acceptance run: one PASS/FAIL line per criterion. `--only N` runs a single
// criterion, `--verbose` adds the per-case measurements below each line.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "whlattice/cardinal.hpp"
#include "whlattice/convergence.hpp"
#include "whlattice/semicardinal.hpp"
#include "whlattice/verify.hpp"

using namespace whl;

namespace {

bool verbose = false;

void note(const char* fmt, auto... args) {
  if (!verbose) return;
  std::printf("    ");
  std::printf(fmt, args...);
  std::printf("\n");
}

struct Outcome {
  bool pass = true;
  std::string summary;
};

// worst value of a family of checks plus the case that produced it
struct Worst {
  double value = 0;
  std::string where = "-";
  bool pass = true;
  void see(double v, const std::string& w, bool ok) {
    if (!ok) pass = false;
    if (v > value || where == "-") value = v, where = w;
  }
  std::string str(const char* label) const {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s %.3e (%s)", label, value, where.c_str());
    return buf;
  }
};

// ---------------------------------------------------------------- systems, built once per run

struct Case {
  std::string name;
  Kernel kernel;
  SystemOptions opt;
};

SystemOptions options(int grid) {
  SystemOptions o;
  o.grid = grid;
  return o;
}

std::vector<Case> zoo() {
  return {
      {"gaussian c=1 d=1", Kernel::gaussian(1, 1.0), options(1024)},
      {"matern m=1 d=1", Kernel::matern(1, 1.0), options(1024)},
      {"gim c=1 m=1.5 d=1", Kernel::gim(1, 1.0, 1.5), options(1024)},
      {"M_3", Kernel::bspline(3), options(1024)},
      {"M_4", Kernel::bspline(4), options(1024)},
      {"polyharmonic m=2 d=1", Kernel::polyharmonic(1, 2), options(1024)},
      {"gaussian c=1 d=2", Kernel::gaussian(2, 1.0), options(256)},
      {"gim c=1 m=2 d=2", Kernel::gim(2, 1.0, 2.0), options(512)},
      {"box spline 222", Kernel::box_spline_222(), options(384)},
      {"polyharmonic m=2 d=2", Kernel::polyharmonic(2, 2), options(512)},
  };
}

std::vector<std::pair<std::string, HalfSpace>> halfspaces(int d) {
  if (d == 1) return {{"coordinate", HalfSpace::coordinate(1, 0)}, {"lex", HalfSpace::ordered(LinearOrder::lex(1))}};
  return {{"coordinate axis 2", HalfSpace::coordinate(d, d - 1)},
          {"lex", HalfSpace::ordered(LinearOrder::lex(d))},
          {"graded lex", HalfSpace::ordered(LinearOrder::graded_lex(d))}};
}

struct Built {
  KernelSymbol ks;
  std::unique_ptr<CardinalSystem> cs;
  std::map<std::string, std::unique_ptr<SemiCardinalSystem>> semi;
  std::unique_ptr<SampleBank> bank;
};

class Store {
 public:
  const Built& get(const Case& c) {
    auto& b = built_[c.name];
    if (!b) {
      b = std::make_unique<Built>(Built{kernel_symbol(c.kernel, c.opt), nullptr, {}});
      b->cs = std::make_unique<CardinalSystem>(b->ks, c.opt);
    }
    return *b;
  }
  const SemiCardinalSystem& semi(const Case& c, const std::string& hname, const HalfSpace& H) {
    get(c);
    auto& s = built_[c.name]->semi[hname];
    if (!s) s = std::make_unique<SemiCardinalSystem>(built_[c.name]->ks, H, c.opt);
    return *s;
  }
  // kernel samples shared by every eta and chi_j check of a case
  const SampleBank* bank(const Case& c) {
    get(c);
    auto& b = built_[c.name]->bank;
    if (!b) b = std::make_unique<SampleBank>(c.kernel, built_[c.name]->cs->grid());
    return b.get();
  }

 private:
  std::map<std::string, std::unique_ptr<Built>> built_;
};

Store store;

const Case& find(const std::vector<Case>& z, const std::string& name) {
  return *std::find_if(z.begin(), z.end(), [&](const Case& c) { return c.name == name; });
}

std::string label(const Case& c, const std::string& h) { return c.name + ", " + h; }

// ---------------------------------------------------------------- criteria

Outcome delta_conditions() {
  Worst card, semi;
  for (const auto& c : zoo()) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto& b = store.get(c);
    note("built %s in %.2fs", c.name.c_str(), std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    const int d = c.kernel.dim();
    const Box box(d, 10);
    std::vector<LatticeIndex> js;
    for (std::size_t i = 0; i < box.size(); ++i)
      if (box.index(i).norm() <= 10) js.push_back(box.index(i));
    const auto chi = b.cs->lagrange().at_many(js);
    double err = 0;
    for (std::size_t i = 0; i < js.size(); ++i) err = std::max(err, std::abs(chi[i] - (js[i].is_zero() ? 1.0 : 0.0)));
    note("chi  %-24s %.3e", c.name.c_str(), err);
    card.see(err, c.name, err < 1e-7);

    for (const auto& [hn, H] : halfspaces(d)) {
      const auto& sc = store.semi(c, hn, H);
      double e = 0;
      for (const auto& j : sc.probe_set()) {
        std::vector<LatticeIndex> ks;
        for (std::size_t i = 0; i < box.size(); ++i) {
          const auto k = j + box.index(i);
          if (box.index(i).norm() <= 10 && H.contains(k)) ks.push_back(k);
        }
        const auto v = sc.lagrange(j).at_many(ks);
        for (std::size_t i = 0; i < ks.size(); ++i) e = std::max(e, std::abs(v[i] - (ks[i] == j ? 1.0 : 0.0)));
      }
      note("chi_j %-24s %-18s %.3e  t=%.2fs", c.name.c_str(), hn.c_str(), e, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
      semi.see(e, label(c, hn), e < 1e-7);
    }
  }
  return {card.pass && semi.pass, card.str("chi") + ", " + semi.str("chi_j") + ", limit 1e-7"};
}

Outcome wh_residual() {
  Worst w;
  for (const auto& c : zoo()) {
    const auto& b = store.get(c);
    auto fo = factor_options(c.opt);
    fo.enforce_residual = false;
    for (const auto& [hn, H] : halfspaces(c.kernel.dim())) {
      const auto f = factorize(b.ks.values, H, fo);
      const auto rep = verify_factorization(b.ks.values, f);
      const double r = std::max(f.factorization_residual, rep.residual);
      note("%-24s %-18s residual %.3e leak %.3e", c.name.c_str(), hn.c_str(), r, f.support_leak);
      w.see(r, label(c, hn), r < 1e-7);
    }
  }
  return {w.pass, w.str("residual") + ", limit 1e-7"};
}

Outcome closed_forms() {
  const double s3 = std::sqrt(3.0);
  SystemOptions o = options(1024);
  o.symbol_radius = 40;
  const auto ks = kernel_symbol(Kernel::bspline(4), o);
  const CardinalSystem cs(ks, o);
  const SemiCardinalSystem sc(ks, HalfSpace::coordinate(1, 0), o);
  const auto& g = sc.factor().gamma;

  // independent oracle: dense finite section on [-40, 40]
  std::vector<LatticeIndex> win;
  for (int k = -40; k <= 40; ++k) win.push_back({k});
  const FiniteSection fs(Kernel::bspline(4), win);
  const auto col = fs.solve_delta({0}).c;
  std::vector<LatticeIndex> half;
  for (int k = 0; k <= 40; ++k) half.push_back({k});
  const FiniteSection hs(Kernel::bspline(4), half);
  const auto hcol = hs.solve_delta({0}).c;

  struct Item {
    const char* name;
    double got, expect, oracle;
  };
  const std::vector<Item> items = {
      {"a_0", cs.coefficient({0}), s3, col[fs.position({0})]},
      {"a_1", cs.coefficient({1}), s3 * (s3 - 2), col[fs.position({1})]},
      {"gamma_0", g[LatticeIndex{0}], 3 - s3, NAN},
      {"gamma_1", g[LatticeIndex{1}], 5 * s3 - 9, NAN},
      {"||omega||_W", cs.omega_wiener(), 3.0, NAN},
      {"||omega_+||_W", sc.factor().gamma_wiener(), s3, NAN},
      {"a_00", sc.coefficient({0}, {0}), 12 - 6 * s3, hcol[hs.position({0})]},
      {"a_10", sc.coefficient({1}, {0}), -(2 - s3) * (12 - 6 * s3), hcol[hs.position({1})]},
  };
  Worst w;
  for (const auto& it : items) {
    double e = std::abs(it.got - it.expect);
    if (!std::isnan(it.oracle)) e = std::max(e, std::abs(it.oracle - it.expect));
    note("%-14s %.15f expect %.15f oracle %.15f err %.2e", it.name, it.got, it.expect, it.oracle, e);
    w.see(e, it.name, e < 1e-8);
  }
  return {w.pass, w.str("max error") + ", limit 1e-8"};
}

// The spec fixes the windows; kernels are ours. A 6/2 window in d = 2 only
// resolves inverses that decay within two steps, so d = 2 is gated on a
// narrow Gaussian and the zoo kernels there are reported alongside.
Outcome oracle_equivalence() {
  Worst w;
  for (const auto& c : zoo()) {
    if (c.kernel.dim() != 1) continue;
    for (const auto& [hn, H] : halfspaces(1)) {
      const auto r = oracle_compare(store.semi(c, hn, H), 60, 15);
      note("%-24s %-18s window 60/15 deviation %.3e rcond %.1e", c.name.c_str(), hn.c_str(), r.deviation, r.rcond);
      w.see(r.deviation, label(c, hn), r.deviation < 1e-6);
    }
  }
  const Case narrow{"gaussian c=3 d=2", Kernel::gaussian(2, 3.0), options(256)};
  for (const auto& [hn, H] : halfspaces(2)) {
    const auto r = oracle_compare(store.semi(narrow, hn, H), 6, 2);
    note("%-24s %-18s window 6/2 deviation %.3e rcond %.1e", narrow.name.c_str(), hn.c_str(), r.deviation, r.rcond);
    w.see(r.deviation, label(narrow, hn), r.deviation < 1e-6);
  }
  if (verbose) {
    const HalfSpace H = HalfSpace::coordinate(2, 1);
    for (const auto& c : zoo()) {
      if (c.kernel.dim() != 2) continue;
      const auto& sc = store.semi(c, "coordinate axis 2", H);
      note("(reported) %-24s window 6/2 %.3e, 12/3 %.3e", c.name.c_str(), oracle_compare(sc, 6, 2).deviation,
           oracle_compare(sc, 12, 3).deviation);
    }
  }
  return {w.pass, w.str("deviation") + ", limit 1e-6 (d=2 on gaussian c=3)"};
}

// windows 40/10 in d = 1 and 20/5 in d = 2, the buffer being the n/4 default
Outcome cholesky() {
  Worst w;
  bool tri = true;
  for (const auto& c : zoo()) {
    const int d = c.kernel.dim();
    const int n = d == 1 ? 40 : 20;
    for (const auto& [hn, H] : halfspaces(d)) {
      const auto r = store.semi(c, hn, H).cholesky_residual(n);
      note("%-24s %-18s window %d/%d residual %.3e triangular %s", c.name.c_str(), hn.c_str(), n, n / 4, r.residual,
           r.triangular ? "yes" : "no");
      tri = tri && r.triangular;
      w.see(r.residual, label(c, hn), r.residual < 1e-6 && r.triangular);
    }
  }
  return {w.pass, w.str("residual") + ", limit 1e-6, triangular " + (tri ? "yes" : "no")};
}

Outcome positivity() {
  const auto ks = kernel_symbol(Kernel::box_spline_222(), options(384));
  const double e = std::abs(ks.min_value - 0.25);
  note("grid 384 min %.17g", ks.min_value);
  char buf[120];
  std::snprintf(buf, sizeof buf, "grid min %.15f, |min - 1/4| %.3e, limit 1e-10", ks.min_value, e);
  return {e < 1e-10, buf};
}

std::vector<DecaySample> column_samples(const SemiCardinalSystem& sc, const LatticeIndex& j) {
  const auto col = sc.column(j);
  std::vector<DecaySample> s;
  const Box& b = col.box();
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto k = b.index(i);
    if (!(k == j)) s.push_back({(k - j).norm(), col.values()[i]});
  }
  return s;
}

Outcome algebraic_decay() {
  const auto z = zoo();
  Worst w;
  for (const char* name : {"gim c=1 m=1.5 d=1", "gim c=1 m=2 d=2", "polyharmonic m=2 d=2"}) {
    const auto& c = find(z, name);
    const int d = c.kernel.dim();
    const double alpha = std::get<Algebraic>(c.kernel.decay()).rate;
    const auto H = halfspaces(d).front();
    const auto& sc = store.semi(c, H.first, H.second);
    for (int jd : {0, 60}) {
      const auto j = LatticeIndex::unit(d, d - 1, jd);
      const auto rings = dyadic_rings(column_samples(sc, j), alpha);
      std::string sups;
      for (double v : rings.sup) sups += " " + std::to_string(v);
      note("%-24s alpha %.1f j=%s variation %.4f ring sups%s", name, alpha, j.str().c_str(), rings.variation,
           sups.c_str());
      const bool finite = std::all_of(rings.sup.begin(), rings.sup.end(), [](double v) { return std::isfinite(v); });
      w.see(rings.variation, std::string(name) + ", j=" + j.str(), finite && rings.variation < 0.1);
    }
  }
  return {w.pass, w.str("outer ring variation") + ", limit 0.1"};
}

// largest |v| per unit shell of distance
std::vector<DecaySample> envelope(const std::vector<DecaySample>& s) {
  std::map<long, DecaySample> best;
  for (const auto& x : s) {
    auto [it, fresh] = best.try_emplace(static_cast<long>(std::floor(x.dist)), x);
    if (!fresh && std::abs(x.value) > std::abs(it->second.value)) it->second = x;
  }
  std::vector<DecaySample> out;
  for (const auto& [k, v] : best) out.push_back(v);
  return out;
}

std::vector<DecaySample> field_samples(const SymbolCoefficients& f) {
  std::vector<DecaySample> s;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto k = f.box().index(i);
    if (!k.is_zero()) s.push_back({k.norm(), f.values()[i]});
  }
  return s;
}

Outcome exponential_decay() {
  const auto z = zoo();
  double worst_r2 = 1;
  std::string where = "-";
  bool pass = true;
  double m4_rate_err = 0;
  const double m4_rate = std::log(2 + std::sqrt(3.0));
  // matern m=1 has a rational symbol whose inverse is a trigonometric polynomial
  // of degree 1: nothing to fit. m=2 keeps a rational symbol with a genuinely
  // geometric inverse; non-integer m adds a power-law factor to the decay.
  const Case matern{"matern m=2 d=1", Kernel::matern(1, 2.0), options(1024)};
  for (const char* name : {"gaussian c=1 d=1", "gaussian c=1 d=2", "matern m=2 d=1", "M_4"}) {
    const auto& c = std::string(name) == matern.name ? matern : find(z, name);
    const int d = c.kernel.dim();
    const auto H = halfspaces(d).front();
    const auto& b = store.get(c);
    const auto& sc = store.semi(c, H.first, H.second);
    std::vector<std::pair<std::string, std::vector<DecaySample>>> sets = {
        {"a_k", field_samples(b.cs->omega())}, {"gamma_k", field_samples(sc.factor().gamma)}};
    for (int jd : {0, 5, 20}) {
      const auto j = LatticeIndex::unit(d, d - 1, jd);
      sets.push_back({"a_k,j j=" + j.str(), column_samples(sc, j)});
    }
    for (const auto& [what, s] : sets) {
      const auto fit = fit_decay(envelope(s), DecayModel::Exponential);
      note("%-18s %-16s rate %.5f R^2 %.6f over [%.0f, %.0f], %zu samples", name, what.c_str(), fit.rate,
           fit.r_squared, fit.lo, fit.hi, fit.samples);
      const bool ok = fit.r_squared > 0.99 && fit.rate > 0;
      pass = pass && ok;
      if (fit.r_squared < worst_r2) worst_r2 = fit.r_squared, where = std::string(name) + " " + what;
      if (std::string(name) == "M_4") {
        const double e = std::abs(fit.rate - m4_rate) / m4_rate;
        m4_rate_err = std::max(m4_rate_err, e);
        pass = pass && e < 0.02;
      }
    }
  }
  if (verbose) {
    const auto& m1 = find(z, "matern m=1 d=1");
    int support = 0;
    for (double v : store.get(m1).cs->omega().values()) support += std::abs(v) > kNoiseFloor;
    note("(reported) matern m=1 d=1: %d coefficients above the noise floor", support);
    const Case frac{"matern m=1.25 d=1", Kernel::matern(1, 1.25), options(1024)};
    const auto fit = fit_decay(envelope(field_samples(store.get(frac).cs->omega())), DecayModel::Exponential);
    note("(reported) matern m=1.25 d=1 a_k: rate %.4f R^2 %.6f", fit.rate, fit.r_squared);
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "min R^2 %.6f (%s), M_4 rate error %.3e relative to log(2+sqrt3), limits 0.99 / 2%%",
                worst_r2, where.c_str(), m4_rate_err);
  return {pass, buf};
}

Outcome convergence() {
  const auto z = zoo();
  const SampleGrid g1{1};
  bool pass = true;
  double worst_ratio = 0;
  std::string where = "-";
  for (const auto& c : z) {
    if (!c.kernel.full_eval()) continue;
    const int d = c.kernel.dim();
    for (const auto& [hn, H] : halfspaces(d)) {
      const auto& b = store.get(c);
      const auto& sc = store.semi(c, hn, H);
      const EtaFunction eta(c.kernel, sc.factor(), c.opt.tail_tol);
      std::vector<LatticeIndex> js;
      for (int n : {0, 1, 2, 5, 10, 20}) js.push_back(exhausting_element(H, n));
      const auto reps = convergence_gap(eta, *b.cs, sc, js, SampleGrid{d}, store.bank(c));
      for (const auto& r : reps) {
        const double ratio = r.bound > 0 ? r.gap / r.bound : (r.gap > 1e-15 ? INFINITY : 0);
        if (ratio > worst_ratio) worst_ratio = ratio, where = label(c, hn) + ", j=" + r.j.str();
        pass = pass && r.gap <= r.bound * (1 + 1e-12) + 1e-14;
      }
      note("%-24s %-18s gaps j_last %.3e bound %.3e", c.name.c_str(), hn.c_str(), reps.back().gap, reps.back().bound);
    }
  }

  // M_4 at j = 20
  const auto& m4 = find(z, "M_4");
  const auto& scm = store.semi(m4, "coordinate", HalfSpace::coordinate(1, 0));
  const EtaFunction em(m4.kernel, scm.factor(), m4.opt.tail_tol);
  const auto g20 = convergence_gap(em, *store.get(m4).cs, scm, LatticeIndex{20}, g1);
  note("M_4 gap(20) %.3e", g20.gap);
  pass = pass && g20.gap < 1e-9;

  // GIM d=1: gap (1+j)^(alpha-1) stays within a factor of 3 along the probes
  SystemOptions o = options(8192);
  o.symbol_radius = 400;
  const Kernel gim = Kernel::gim(1, 1.0, 1.5);
  const auto ks = kernel_symbol(gim, o);
  const CardinalSystem cs(ks, o);
  const SemiCardinalSystem sc(ks, HalfSpace::coordinate(1, 0), o);
  const EtaFunction eg(gim, sc.factor(), o.tail_tol);
  const double alpha = std::get<Algebraic>(gim.decay()).rate;
  double lo = INFINITY, hi = 0, blo = INFINITY, bhi = 0;
  for (int j : {5, 10, 20, 40, 80}) {
    const auto r = convergence_gap(eg, cs, sc, LatticeIndex{j}, g1);
    const double s = r.gap * std::pow(1.0 + j, alpha - 1);
    const double sb = r.bound * std::pow(1.0 + j, alpha - 1);
    note("gim d=1 j=%d gap %.3e scaled %.4f, bound scaled %.4f", j, r.gap, s, sb);
    lo = std::min(lo, s), hi = std::max(hi, s);
    blo = std::min(blo, sb), bhi = std::max(bhi, sb);
  }
  pass = pass && hi <= 3 * lo;

  char buf[320];
  std::snprintf(buf, sizeof buf,
                "max gap/bound %.3e (%s), M_4 gap(20) %.3e, gim d=1 scaled gap spread %.3f (bound %.3f); "
                "limits 1 / 1e-9 / 3",
                worst_ratio, where.c_str(), g20.gap, hi / lo, bhi / blo);
  return {pass, buf};
}

Outcome eta_representations() {
  Worst w;
  for (const auto& c : zoo()) {
    if (!c.kernel.full_eval()) continue;
    const int d = c.kernel.dim();
    const SampleGrid grid{d};
    for (const auto& [hn, H] : halfspaces(d)) {
      const auto& sc = store.semi(c, hn, H);
      const EtaFunction eta(c.kernel, sc.factor(), c.opt.tail_tol);
      const SampleBank* bank = store.bank(c);
      double e = chi_via_eta(eta, *store.get(c).cs, grid, bank);
      for (const auto& j : sc.probe_set()) e = std::max(e, chij_via_eta(eta, sc, j, grid, bank));
      note("%-24s %-18s residual %.3e", c.name.c_str(), hn.c_str(), e);
      w.see(e, label(c, hn), e < 1e-7);
    }
  }
  return {w.pass, w.str("residual") + ", limit 1e-7"};
}

Outcome fundamental_identity() {
  const auto z = zoo();
  const auto& c = find(z, "gaussian c=1 d=1");
  const auto& cs = *store.get(c).cs;
  const NativeQuadratureSpec q(c.kernel);
  const double x0 = 0.3;
  const auto r = fundamental_identity_check(q, cs, x0);
  const double x[] = {x0};
  const double vs_chi = std::abs(r.quadrature - cs.chi(x));
  std::string hist;
  for (double h : r.history) hist += " " + std::to_string(h);
  note("quadrature %.15f series %.15f chi(x0) %.15f history%s", r.quadrature, r.series, cs.chi(x), hist.c_str());
  char buf[200];
  std::snprintf(buf, sizeof buf, "residual %.3e, vs chi(x0) %.3e, refinement %s; limit 2e-5", r.residual, vs_chi,
                r.refinement_ok ? "ok" : "not ok");
  return {r.residual < 2e-5 && vs_chi < 2e-5 && r.refinement_ok, buf};
}

Outcome lebesgue() {
  bool pass = true;
  double worst = 0, m4_bound = 0;
  std::string where = "-";
  for (const auto& c : zoo()) {
    if (!c.kernel.full_eval()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    const auto l = store.get(c).cs->lebesgue();
    note("%-24s estimate %.6f bound %.6f (%.1fs)", c.name.c_str(), l.estimate, l.bound,
         std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    pass = pass && l.estimate <= l.bound * (1 + 1e-12);
    if (l.estimate / l.bound > worst) worst = l.estimate / l.bound, where = c.name;
    if (c.name == "M_4") m4_bound = l.bound;
  }
  const bool m4_ok = std::abs(m4_bound - 3.0) <= 1e-12;
  char buf[200];
  std::snprintf(buf, sizeof buf, "max estimate/bound %.4f (%s), M_4 bound %.15f", worst, where.c_str(), m4_bound);
  return {pass && m4_ok, buf};
}

struct Criterion {
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--verbose")) verbose = true;
    else if (!std::strcmp(argv[i], "--only") && i + 1 < argc) only = std::atoi(argv[++i]);
    else {
      std::fprintf(stderr, "usage: %s [--only N] [--verbose]\n", argv[0]);
      return 2;
    }
  }
  const std::vector<Criterion> all = {
      {"delta conditions", delta_conditions},
      {"Wiener-Hopf residual", wh_residual},
      {"closed-form cubic regression", closed_forms},
      {"oracle equivalence", oracle_equivalence},
      {"Cholesky identity", cholesky},
      {"symbol positivity", positivity},
      {"algebraic decay transfer", algebraic_decay},
      {"exponential decay transfer", exponential_decay},
      {"convergence", convergence},
      {"eta representations", eta_representations},
      {"fundamental identity", fundamental_identity},
      {"Lebesgue bound", lebesgue},
  };
  int failed = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (only && static_cast<int>(i) + 1 != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = all[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%-4s C%-2zu %-30s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, all[i].title, o.summary.c_str(),
                secs);
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
