#include "whlattice/wienerhopf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <complex>
#include <string>

namespace whl {

namespace {
std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}
}  // namespace

ResidualTooLarge::ResidualTooLarge(double residual_, double tol_)
    : std::runtime_error("factorization residual " + sci(residual_) + " exceeds tolerance " +
                         sci(tol_)),
      residual(residual_),
      tol(tol_) {}

SymbolCoefficients split_plus(const SymbolCoefficients& lambda, const HalfSpace& H) {
  if (lambda.dim() != H.dim()) throw DimensionMismatch("split_plus: dimension mismatch");
  if (lambda.symmetry_defect() > 1e-10) throw std::invalid_argument("split_plus needs symmetric log coefficients");
  SymbolCoefficients out(lambda.dim(), lambda.radius());
  const Box& b = lambda.box();
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto k = b.index(i);
    const double v = lambda.values()[i];
    if (!H.contains_unchecked(k)) continue;
    out.values()[i] = H.contains_unchecked(-k) ? 0.5 * v : v;
  }
  return out;
}

double split_weight(const TorusGrid& g, std::size_t slot, const HalfSpace& H) {
  const LatticeIndex r = g.centered(slot);
  const std::size_t mirror = g.slot(-r);
  if (mirror == slot) return 0.5;
  const bool a = H.contains_unchecked(r);
  const bool b = H.contains_unchecked(g.centered(mirror));
  if (a == b) return 0.5;
  return a ? 1.0 : 0.0;
}

namespace {

SymbolCoefficients exp_series(const SymbolCoefficients& x, int radius) {
  SymbolCoefficients sum = SymbolCoefficients::delta(x.dim()).resized(radius);
  SymbolCoefficients term = sum;
  for (int n = 1; n < 1000; ++n) {
    term = multiply(term, x).resized(radius);
    for (double& v : term.values()) v /= n;
    for (std::size_t i = 0; i < sum.size(); ++i) sum.values()[i] += term.values()[i];
    if (term.wiener_norm() < 1e-18 * sum.wiener_norm()) break;
  }
  return sum;
}

double residual_against(const TorusGrid& omega_values, const WienerHopfFactor& f) {
  const TorusGrid p = plus_values(f, omega_values.points());
  double res = 0;
  for (std::size_t i = 0; i < p.size(); ++i) res = std::max(res, std::abs(omega_values[i].real() - std::norm(p[i])));
  return res;
}

int max_radius(int M) { return (M - 1) / 2; }

}  // namespace

TorusGrid plus_values(const WienerHopfFactor& f, int M) {
  TorusGrid p = coefficients_on_grid(f.gamma, M);
  transform(p, true);
  return p;
}

WienerHopfFactor factorize(const TorusGrid& sigma_values, const HalfSpace& H, const FactorOptions& opt) {
  if (sigma_values.dim() != H.dim()) throw DimensionMismatch("factorize: symbol and half-space dimensions differ");
  const int M = sigma_values.points();
  const int R = max_radius(M);

  TorusGrid omega = sigma_values;
  invert_values(omega, opt.positivity_floor);

  WienerHopfFactor f{H, {}, M};
  {
    TorusGrid oc = omega;
    transform(oc, false);
    for (const auto& z : oc.values()) f.omega_wiener += std::abs(z.real());
  }

  TorusGrid lam = omega;
  for (auto& z : lam.values()) z = std::log(z.real());
  transform(lam, false);
  f.lambda0 = lam[0].real();

  SymbolCoefficients gamma;
  if (opt.series_mode) {
    const int rs = std::min(opt.series_radius, R);
    SymbolCoefficients lp(H.dim(), rs);
    const Box& b = lp.box();
    for (std::size_t i = 0; i < b.size(); ++i) {
      const std::size_t s = lam.slot(b.index(i));
      lp.values()[i] = split_weight(lam, s, H) * lam[s].real();
    }
    gamma = exp_series(lp, rs);
  } else {
    for (std::size_t i = 0; i < lam.size(); ++i) lam[i] *= split_weight(lam, i, H);
    transform(lam, true);
    for (auto& z : lam.values()) z = std::exp(z);
    transform(lam, false);

    gamma = SymbolCoefficients(H.dim(), R);
    double leak = 0;
    for (std::size_t i = 0; i < lam.size(); ++i) {
      const LatticeIndex r = lam.centered(i);
      if (r.max_abs() <= R && H.contains_unchecked(r)) {
        gamma.ref(r) = lam[i].real();
        f.imag_residue = std::max(f.imag_residue, std::abs(lam[i].imag()));
      } else {
        leak += std::abs(lam[i]);
      }
    }
    f.support_leak = leak / gamma.wiener_norm();
  }

  const double full = gamma.wiener_norm();
  f.gamma = gamma.trimmed(opt.trim_tol * full);
  f.trim_tail = full - f.gamma.wiener_norm();
  f.factorization_residual = residual_against(omega, f);
  if (opt.enforce_residual && !(f.factorization_residual <= opt.residual_tol))
    throw ResidualTooLarge(f.factorization_residual, opt.residual_tol);
  return f;
}

WienerHopfFactor factorize(const SymbolCoefficients& sigma, const HalfSpace& H, int M, const FactorOptions& opt) {
  return factorize(grid_eval(sigma, M), H, opt);
}

FactorizationReport verify_factorization(const TorusGrid& sigma_values, const WienerHopfFactor& f) {
  FactorizationReport rep;
  TorusGrid omega = sigma_values;
  invert_values(omega, 0.0);
  rep.residual = residual_against(omega, f);
  transform(omega, false);
  for (const auto& z : omega.values()) rep.omega_wiener += std::abs(z.real());
  const double g = f.gamma.wiener_norm();
  rep.plus_wiener_sq = g * g;
  rep.norms_consistent = rep.omega_wiener <= rep.plus_wiener_sq * (1 + 1e-9);
  return rep;
}

FactorizationReport verify_factorization(const SymbolCoefficients& sigma, const WienerHopfFactor& f, int M) {
  return verify_factorization(grid_eval(sigma, M), f);
}

SymbolCoefficients inverse_plus(const WienerHopfFactor& f, double trim_tol) {
  const int M = f.grid;
  TorusGrid p = plus_values(f, M);
  for (auto& z : p.values()) z = 1.0 / z;
  transform(p, false);
  const int R = max_radius(M);
  SymbolCoefficients out(f.gamma.dim(), R);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const LatticeIndex r = p.centered(i);
    if (r.max_abs() <= R && f.halfspace.contains_unchecked(r)) out.ref(r) = p[i].real();
  }
  return out.trimmed(trim_tol * out.wiener_norm());
}

}  // namespace whl
