#include "whlattice/cardinal.hpp"

#include <algorithm>
#include <cmath>

namespace whl {

namespace {

struct OmegaField {
  SymbolCoefficients a;
  double wiener = 0;
  double discarded = 0;
};

OmegaField omega_field(const KernelSymbol& ks, const SystemOptions& opt) {
  TorusGrid w = ks.values;
  invert_values(w, opt.positivity_floor);
  auto fg = coefficients_from_values(w, (w.points() - 1) / 2);
  OmegaField out;
  out.wiener = fg.coeffs.wiener_norm() / std::max(1e-300, 1.0 - fg.discarded_relative);
  out.discarded = fg.discarded_relative;
  if (opt.eval_radius >= 0)
    out.a = fg.coeffs.resized(std::min(opt.eval_radius, fg.coeffs.radius()));
  else
    out.a = fg.coeffs.trimmed(opt.trim_tol * fg.coeffs.wiener_norm());
  return out;
}

// reduced cell samples: every kernel with off-lattice evaluation here is even in each
// coordinate, so sum_j |chi(x - j)| is even and 1-periodic per axis and t in [0, 1/2] suffices
std::vector<std::vector<double>> cell_samples(int d, int per_cell) {
  std::vector<double> ts;
  for (int q = 0; q < per_cell; ++q) {
    const double t = per_cell > 1 ? double(q) / (per_cell - 1) : 0.0;
    if (t <= 0.5 + 1e-12) ts.push_back(t);
  }
  std::vector<std::vector<double>> out;
  std::size_t n = 1;
  for (int i = 0; i < d; ++i) n *= ts.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<double> x(static_cast<std::size_t>(d));
    std::size_t rem = c;
    for (int i = 0; i < d; ++i) {
      x[static_cast<std::size_t>(i)] = ts[rem % ts.size()];
      rem /= ts.size();
    }
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace

CardinalSystem::CardinalSystem(const KernelSymbol& ks, const SystemOptions& opt)
    : sigma_(ks.sigma),
      chi_(ks.kernel, SymbolCoefficients(ks.kernel.dim(), 0), opt.tail_tol),
      grid_(ks.values.points()),
      min_symbol_(ks.min_value),
      tail_tol_(opt.tail_tol) {
  auto f = omega_field(ks, opt);
  omega_wiener_ = f.wiener;
  discarded_ = f.discarded;
  chi_ = KernelExpansion(ks.kernel, std::move(f.a), opt.tail_tol);
}

CardinalSystem build_cardinal(const Kernel& k, const SystemOptions& opt) {
  return CardinalSystem(kernel_symbol(k, opt), opt);
}

int CardinalSystem::eval_radius() const {
  const double zero[kMaxDim] = {};
  return chi_.radius_for(zero);
}

SymbolCoefficients CardinalSystem::data_coefficients(const DataWindow& data) const {
  const DataWindow w = data.materialized();
  w.check();
  if (w.dim() != kernel().dim()) throw DimensionMismatch("data dimension does not match the kernel");
  if (2 * w.radius() + 1 > grid_) throw std::invalid_argument("data window does not fit on the torus grid");
  TorusGrid y(w.dim(), grid_);
  for (std::size_t i = 0; i < w.points.size(); ++i) y[y.slot(w.points[i])] += w.values[i];
  TorusGrid a = coefficients_on_grid(omega(), grid_);
  transform(y, false);
  transform(a, false);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] *= a[i] * static_cast<double>(y.size());
  transform(y, true);
  SymbolCoefficients c(w.dim(), (grid_ - 1) / 2);
  const Box& b = c.box();
  for (std::size_t i = 0; i < b.size(); ++i) c.values()[i] = y[y.slot(b.index(i))].real();
  return c.trimmed(1e-16 * c.wiener_norm());
}

InterpolationValue CardinalSystem::interpolate(const DataWindow& data, std::span<const double> x) const {
  const DataWindow w = data.materialized();
  const int d = kernel().dim();
  if (static_cast<int>(x.size()) != d) throw DimensionMismatch("point dimension does not match the kernel");
  InterpolationValue v;
  std::vector<double> shifted(w.points.size() * static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < w.points.size(); ++i)
    for (int a = 0; a < d; ++a) shifted[i * d + a] = x[static_cast<std::size_t>(a)] - w.points[i][a];
  const auto chis = chi_.eval_many(shifted);
  for (std::size_t i = 0; i < chis.size(); ++i) v.lagrange += w.values[i] * chis[i];
  v.coefficient = KernelExpansion(kernel(), data_coefficients(w), tail_tol_)(x);
  return v;
}

std::vector<double> CardinalSystem::interpolate_many(const DataWindow& data, std::span<const double> points) const {
  return KernelExpansion(kernel(), data_coefficients(data), tail_tol_).eval_many(points);
}

LebesgueEstimate CardinalSystem::lebesgue(int per_cell) const {
  const Kernel& k = kernel();
  if (!k.full_eval()) throw CapabilityError("Lebesgue estimate needs off-lattice evaluation");
  if (per_cell < 1) throw std::invalid_argument("per_cell must be >= 1");
  LebesgueEstimate out;
  out.omega_wiener = omega_wiener_;
  out.phi_periodized = periodized_sup(k, per_cell, periodized_radius(k));
  out.bound = out.omega_wiener * out.phi_periodized;
  const ShiftedTable tab(k, omega(), grid_);
  for (const auto& x0 : cell_samples(k.dim(), per_cell)) {
    const auto s = tab.table(x0);
    double sum = 0;
    for (double v : s) sum += std::abs(v);
    out.estimate = std::max(out.estimate, sum);
    ++out.samples;
  }
  return out;
}

}  // namespace whl
