#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "whlattice/lattice.hpp"
#include "whlattice/symbols.hpp"

namespace whl {

struct CapabilityError : std::logic_error {
  using std::logic_error::logic_error;
};
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// |phi(x)| <= C0 (1 + ||x||)^-rate
struct Algebraic {
  double rate;
  double constant;
};
// |phi(x)| <= C0 exp(-rate |x|_1)
struct Exponential {
  double rate;
  double constant;
};
using DecayClass = std::variant<Algebraic, Exponential>;

namespace family {
struct Delta {};  // tensor hat: lattice samples are the Kronecker delta
struct Gaussian {
  double c;
};
struct Matern {
  double m;
};
struct Gim {
  double c;
  double m;
};
struct BSpline {
  int n;
};
struct BoxSpline222 {};
struct Polyharmonic {
  int m;
};
}  // namespace family

using Family = std::variant<family::Delta, family::Gaussian, family::Matern, family::Gim, family::BSpline,
                            family::BoxSpline222, family::Polyharmonic>;

class Kernel {
 public:
  static Kernel delta(int dim);
  static Kernel gaussian(int dim, double c);
  static Kernel matern(int dim, double m);
  static Kernel gim(int dim, double c, double m);
  static Kernel bspline(int n);
  static Kernel box_spline_222();
  static Kernel polyharmonic(int dim, int m);

  int dim() const noexcept { return dim_; }
  const Family& family() const noexcept { return fam_; }
  const DecayClass& decay() const noexcept { return decay_; }
  bool positive_definite() const noexcept { return pd_; }
  bool full_eval() const noexcept { return !std::holds_alternative<family::BoxSpline222>(fam_); }
  // |x|_inf beyond which phi vanishes, if compactly supported
  std::optional<double> support() const noexcept { return support_; }

  double operator()(std::span<const double> x) const;
  double eval(const double* x) const;  // no checks; hot loops
  double at(const LatticeIndex& k) const;

  double sup_abs() const noexcept { return sup_; }
  // bound on |phi(y)| over |y|_inf >= r
  double decay_bound(double r) const noexcept;

  std::string name() const;
  std::vector<std::pair<std::string, double>> params() const;
  std::string describe() const;  // "gim(c=1,m=1.5) d=1"

  // polyharmonic stencil of (sum_i nabla_i)^m
  const std::vector<std::pair<LatticeIndex, double>>& stencil() const noexcept { return stencil_; }

 private:
  Kernel(Family f, int dim) : fam_(f), dim_(dim) {}
  void finish();

  Family fam_;
  int dim_;
  DecayClass decay_{Exponential{1.0, 1.0}};
  bool pd_ = true;
  std::optional<double> support_;
  double sup_ = 1.0;
  double nu_ = 0.0;      // Matern order
  double phi0_ = 0.0;    // Matern value at the origin
  double ph_c_ = 0.0;    // polyharmonic constant
  std::vector<std::pair<LatticeIndex, double>> stencil_;
};

double bessel_k(double nu, double x);
double bspline_eval(int n, double x);
double polyharmonic_constant(int m, int d);
double polyharmonic_phi(int m, int d, double r);
double polyharmonic_psi(int m, int d, std::span<const double> x);

struct LatticeSamples {
  SymbolCoefficients values;
  double tail_bound = 0.0;  // analytic bound on the mass outside the box
};
LatticeSamples lattice_samples(const Kernel& k, int radius);

// Bound on sum_{|j|_inf > R} |phi(j)| from the declared decay class.
double analytic_tail_bound(const Kernel& k, int radius);

struct TruncationRadius {
  int radius = 0;
  double tail = 0.0;
  bool capped = false;
};
// smallest R with sum_{|j|_inf > R} |phi(j)| < tol; shell sums are exact up
// to the cap, the decay class covers the remainder
TruncationRadius decay_truncation_radius(const Kernel& k, double tol, int max_radius = 1024);

// sigma on the M-grid: lattice samples within sample_radius folded mod M, then transformed
struct KernelSymbolGrid {
  TorusGrid values;
  int sample_radius = 0;
  double sample_tail = 0.0;
};
KernelSymbolGrid kernel_symbol_grid(const Kernel& k, int M, std::size_t sample_budget);

// sup_x sum_k |phi(x - k)| sampled on a cell grid, with the analytic tail added
double periodized_sup(const Kernel& k, int per_cell, int radius);
// lattice radius that periodized_sup needs before its analytic remainder takes over
int periodized_radius(const Kernel& k);

}  // namespace whl
