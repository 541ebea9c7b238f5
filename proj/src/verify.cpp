#include "whlattice/verify.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <memory>
#include <string>
#include <utility>

namespace whl {

namespace {
std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}
}  // namespace

IllConditioned::IllConditioned(double rc, double floor)
    : std::runtime_error("finite section is ill-conditioned: rcond " + sci(rc) + " below " +
                         sci(floor)),
      rcond(rc) {}

struct FiniteSection::Impl {
  Eigen::MatrixXd T;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
};

FiniteSection::FiniteSection(const Kernel& k, std::vector<LatticeIndex> window, std::size_t cap, double rcond_floor)
    : impl_(nullptr), window_(std::move(window)) {
  const std::size_t n = window_.size();
  if (n == 0) throw std::invalid_argument("finite section needs a non-empty window");
  if (n > cap)
    throw WindowTooLarge("finite section of " + std::to_string(n) + " unknowns exceeds the dense cap " +
                         std::to_string(cap));
  for (const auto& j : window_)
    if (j.dim() != k.dim()) throw DimensionMismatch("finite section: window and kernel dimensions differ");
  auto impl = std::make_unique<Impl>();
  impl->T.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  toeplitz_block(k, window_, window_, impl->T.data(), Exec::Parallel);
  impl->lu.compute(impl->T);
  rcond_ = impl->lu.rcond();
  if (!(rcond_ >= rcond_floor)) throw IllConditioned(rcond_, rcond_floor);
  impl_ = impl.release();
}

FiniteSection::~FiniteSection() { delete impl_; }
FiniteSection::FiniteSection(FiniteSection&& o) noexcept
    : impl_(std::exchange(o.impl_, nullptr)), window_(std::move(o.window_)), rcond_(o.rcond_) {}
FiniteSection& FiniteSection::operator=(FiniteSection&& o) noexcept {
  if (this != &o) {
    delete impl_;
    impl_ = std::exchange(o.impl_, nullptr);
    window_ = std::move(o.window_);
    rcond_ = o.rcond_;
  }
  return *this;
}

std::size_t FiniteSection::position(const LatticeIndex& k) const {
  const auto it = std::find(window_.begin(), window_.end(), k);
  if (it == window_.end()) throw std::out_of_range("index " + k.str() + " is not in the finite-section window");
  return static_cast<std::size_t>(it - window_.begin());
}

FiniteSection::Solution FiniteSection::solve(std::span<const double> rhs) const {
  if (rhs.size() != window_.size()) throw DimensionMismatch("finite section: rhs length differs from the window");
  const Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  const Eigen::VectorXd x = impl_->lu.solve(b);
  Solution s;
  s.c.assign(x.data(), x.data() + x.size());
  s.residual = (impl_->T * x - b).lpNorm<Eigen::Infinity>();
  return s;
}

FiniteSection::Solution FiniteSection::solve_delta(const LatticeIndex& j) const {
  std::vector<double> rhs(window_.size(), 0.0);
  rhs[position(j)] = 1.0;
  return solve(rhs);
}

FiniteSection::Solution finite_section_solve(const Kernel& k, const std::vector<LatticeIndex>& window,
                                             std::span<const double> rhs) {
  return FiniteSection(k, window).solve(rhs);
}

DecayFit fit_decay(std::span<const DecaySample> samples, DecayModel model, std::optional<double> claimed,
                   double slack) {
  std::vector<double> xs, ys;
  DecayFit fit;
  fit.model = model;
  fit.lo = INFINITY;
  fit.hi = -INFINITY;
  for (const auto& s : samples) {
    if (!(std::abs(s.value) > kNoiseFloor) || s.dist < 0) continue;
    xs.push_back(model == DecayModel::Algebraic ? std::log1p(s.dist) : s.dist);
    ys.push_back(std::log(std::abs(s.value)));
    fit.lo = std::min(fit.lo, s.dist);
    fit.hi = std::max(fit.hi, s.dist);
  }
  fit.samples = xs.size();
  if (xs.size() < 8)
    throw InsufficientSamples("decay fit needs at least 8 samples above the noise floor, got " +
                              std::to_string(xs.size()));
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0) throw InsufficientSamples("decay fit needs samples at more than one distance");
  const double slope = sxy / sxx;
  fit.rate = -slope;
  fit.intercept = my - slope * mx;
  fit.r_squared = syy > 0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  const double need = claimed ? *claimed - slack : 0.0;
  fit.verdict = (claimed ? fit.rate >= need : fit.rate > 0) ? Verdict::Consistent : Verdict::Violated;
  return fit;
}

RingProfile dyadic_rings(std::span<const DecaySample> samples, double alpha, double lo, double hi) {
  if (!(lo > 0) || !(hi > lo)) throw std::invalid_argument("ring range needs 0 < lo < hi");
  RingProfile p;
  for (double e = lo; e < hi; e *= 2) p.edges.push_back(e);
  p.edges.push_back(hi);
  p.sup.assign(p.edges.size() - 1, 0.0);
  for (const auto& s : samples) {
    if (s.dist < lo || s.dist > hi || !(std::abs(s.value) > kNoiseFloor)) continue;
    std::size_t r = 0;
    while (r + 2 < p.edges.size() && s.dist >= p.edges[r + 1]) ++r;
    p.sup[r] = std::max(p.sup[r], std::abs(s.value) * std::pow(1 + s.dist, alpha));
  }
  const std::size_t n = p.sup.size();
  if (n >= 2) {
    const double a = p.sup[n - 2], b = p.sup[n - 1];
    p.variation = std::max(a, b) > 0 ? std::abs(a - b) / std::max(a, b) : 0.0;
  }
  return p;
}

NativeQuadratureSpec::NativeQuadratureSpec(Kernel k) : kernel(std::move(k)) {
  if (kernel.dim() != 1) throw CapabilityError("native-space quadrature is implemented for d = 1 only");
  const auto& fam = kernel.family();
  if (!std::holds_alternative<family::Gaussian>(fam) && !std::holds_alternative<family::Matern>(fam))
    throw CapabilityError(kernel.name() + " has no closed-form transform here");
}

double NativeQuadratureSpec::transform(double t) const {
  if (const auto* g = std::get_if<family::Gaussian>(&kernel.family()))
    return std::sqrt(std::numbers::pi / g->c) * std::exp(-t * t / (4 * g->c));
  const double m = std::get<family::Matern>(kernel.family()).m;
  // r^nu K_nu(r) with nu = m - 1/2
  return std::sqrt(2 * std::numbers::pi) * std::tgamma(m) * std::pow(2.0, m - 1) * std::pow(1 + t * t, -m);
}

double NativeQuadratureSpec::tail(double T) const {
  if (const auto* g = std::get_if<family::Gaussian>(&kernel.family()))
    return 2 * std::numbers::pi * std::erfc(T / (2 * std::sqrt(g->c)));
  const double m = std::get<family::Matern>(kernel.family()).m;
  const double A = std::sqrt(2 * std::numbers::pi) * std::tgamma(m) * std::pow(2.0, m - 1);
  return 2 * A * std::pow(T, 1 - 2 * m) / (2 * m - 1);
}

double NativeQuadratureSpec::effective_range(double scale) const {
  if (range > 0) return range;
  double T = 1;
  while (T < 4096 && tail(T) * scale / (2 * std::numbers::pi) > 1e-12) T *= 1.25;
  return std::min(T, 4096.0);
}

namespace {

struct Term {
  double k, v;
};

std::vector<Term> terms_1d(const SymbolCoefficients& c) {
  std::vector<Term> out;
  const double cut = 1e-18 * c.wiener_norm();
  const Box& b = c.box();
  for (std::size_t i = 0; i < b.size(); ++i)
    if (std::abs(c.values()[i]) > cut) out.push_back({double(b.index(i)[0]), c.values()[i]});
  return out;
}

// (2 pi)^{-1} int_{-T}^{T} w(t) phi-hat(t) dt with w even, trapezoid on [0, T]
template <class W>
double trapezoid(const NativeQuadratureSpec& q, double T, double h, W&& w) {
  const auto n = static_cast<long>(std::ceil(T / h));
  const double hh = T / static_cast<double>(n);
  double s = 0.5 * (w(0.0) * q.transform(0.0) + w(T) * q.transform(T));
  for (long i = 1; i < n; ++i) {
    const double t = hh * static_cast<double>(i);
    s += w(t) * q.transform(t);
  }
  return 2 * hh * s / (2 * std::numbers::pi);
}

template <class W>
IdentityCheck run_check(const NativeQuadratureSpec& q, double series, double norm, W&& w, double tail_mean = 0) {
  IdentityCheck out;
  out.series = series;
  const double T = q.effective_range(norm);
  out.truncation = q.tail(T) * norm / (2 * std::numbers::pi);
  double h = q.step;
  for (int r = 0; r <= q.refinements; ++r, h *= 0.5) {
    // beyond T the periodic factor averages out to tail_mean
    out.quadrature = trapezoid(q, T, h, w) + tail_mean * q.tail(T) / (2 * std::numbers::pi);
    out.history.push_back(std::abs(out.quadrature - series));
  }
  out.residual = out.history.back();
  const double floor = 1e-6;
  for (std::size_t i = 1; i < out.history.size(); ++i)
    if (!(out.history[i] <= 0.5 * out.history[i - 1] || out.history[i] <= floor)) out.refinement_ok = false;
  return out;
}

}  // namespace

IdentityCheck fundamental_identity_check(const NativeQuadratureSpec& q, const CardinalSystem& cs, double x0) {
  if (cs.kernel().describe() != q.kernel.describe())
    throw std::invalid_argument("quadrature kernel differs from the system kernel");
  const auto a = terms_1d(cs.omega());
  const double x[1] = {x0};
  return run_check(q, cs.chi(x), cs.omega().wiener_norm(), [&](double t) {
    double s = 0;
    for (const auto& term : a) s += term.v * std::cos((term.k - x0) * t);
    return s;
  });
}

IdentityCheck fundamental_identity_check(const NativeQuadratureSpec& q, const SemiCardinalSystem& sc,
                                         const LatticeIndex& j, double x0) {
  if (sc.kernel().describe() != q.kernel.describe())
    throw std::invalid_argument("quadrature kernel differs from the system kernel");
  const auto col = sc.column(j);
  const auto a = terms_1d(col);
  const double x[1] = {x0};
  const double series = KernelExpansion(sc.kernel(), col)(x);
  return run_check(q, series, col.wiener_norm(), [&](double t) {
    double s = 0;
    for (const auto& term : a) s += term.v * std::cos((term.k - x0) * t);
    return s;
  });
}

IdentityCheck native_self_check(const NativeQuadratureSpec& q, const CardinalSystem& cs) {
  if (cs.kernel().describe() != q.kernel.describe())
    throw std::invalid_argument("quadrature kernel differs from the system kernel");
  const auto a = terms_1d(cs.omega());
  const double norm = cs.omega().wiener_norm();
  double mean = 0;
  for (const auto& term : a) mean += term.v * term.v;
  // chi-hat = phi-hat * omega, so (chi, chi)_phi = (2 pi)^{-1} int phi-hat omega^2
  return run_check(q, cs.coefficient(LatticeIndex(1)), norm * norm, [&](double t) {
    double s = 0;
    for (const auto& term : a) s += term.v * std::cos(term.k * t);
    return s * s;
  }, mean);
}

OracleComparison oracle_compare(const CardinalSystem& cs, int n, int buffer, std::size_t cap) {
  const int d = cs.kernel().dim();
  const Box box(d, n);
  std::vector<LatticeIndex> w;
  for (std::size_t i = 0; i < box.size(); ++i) w.push_back(box.index(i));
  const FiniteSection fs(cs.kernel(), w, cap);
  const auto sol = fs.solve_delta(LatticeIndex(d));
  OracleComparison out;
  out.solve_residual = sol.residual;
  out.rcond = fs.rcond();
  out.unknowns = w.size();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].max_abs() > n - buffer) continue;
    out.deviation = std::max(out.deviation, std::abs(sol.c[i] - cs.coefficient(w[i])));
    ++out.compared;
  }
  return out;
}

OracleComparison oracle_compare(const SemiCardinalSystem& sc, int n, int buffer, std::size_t cap) {
  const auto w = sc.halfspace().window(n);
  const FiniteSection fs(sc.kernel(), w, cap);
  OracleComparison out;
  out.rcond = fs.rcond();
  out.unknowns = w.size();
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i].max_abs() <= n - buffer) pos.push_back(i);
  // direct sums cost a gamma box per entry; past that a grid column is cheaper
  const double direct = std::pow(2.0 * sc.working_radius() + 1, sc.kernel().dim()) * double(pos.size());
  const double grid = std::pow(double(sc.grid()), sc.kernel().dim()) * 20;
  std::vector<LatticeIndex> ks, inner;
  for (std::size_t i : pos) ks.push_back(w[i]);
  for (const auto& j : w)
    if (j.max_abs() <= n - buffer) inner.push_back(j);
  const std::size_t chunk = SemiCardinalSystem::kColumnChunk;
  for (std::size_t c = 0; c < inner.size(); c += chunk) {
    const std::size_t np = std::min(chunk, inner.size() - c);
    std::vector<std::vector<double>> a(np);
    if (direct < grid) {
      for (std::size_t q = 0; q < np; ++q) {
        const std::vector<LatticeIndex> js(ks.size(), inner[c + q]);
        a[q] = sc.coefficients(ks, js);
      }
    } else {
      const auto cols = sc.columns(std::span<const LatticeIndex>(inner).subspan(c, np));
      for (std::size_t q = 0; q < np; ++q)
        for (const auto& k : ks) a[q].push_back(cols[q][k]);
    }
    for (std::size_t q = 0; q < np; ++q) {
      const auto sol = fs.solve_delta(inner[c + q]);
      out.solve_residual = std::max(out.solve_residual, sol.residual);
      for (std::size_t r = 0; r < ks.size(); ++r) {
        out.deviation = std::max(out.deviation, std::abs(sol.c[pos[r]] - a[q][r]));
        ++out.compared;
      }
    }
  }
  return out;
}

std::string to_string(DecayModel m) { return m == DecayModel::Algebraic ? "algebraic" : "exponential"; }
std::string to_string(Verdict v) { return v == Verdict::Consistent ? "consistent" : "violated"; }

}  // namespace whl
