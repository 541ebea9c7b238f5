#pragma once

#include <span>
#include <vector>

#include "whlattice/expansion.hpp"
#include "whlattice/system.hpp"

namespace whl {

struct LebesgueEstimate {
  double estimate = 0;      // max over the sampled cell of sum_j |chi(x - j)|
  double bound = 0;         // ||omega||_W * |phi|_inf
  double omega_wiener = 0;
  double phi_periodized = 0;
  int samples = 0;
};

class CardinalSystem {
 public:
  CardinalSystem(const KernelSymbol& ks, const SystemOptions& opt);

  const Kernel& kernel() const noexcept { return chi_.kernel(); }
  const SymbolCoefficients& sigma() const noexcept { return sigma_; }
  const SymbolCoefficients& omega() const noexcept { return chi_.coeffs(); }
  int grid() const noexcept { return grid_; }
  double min_symbol() const noexcept { return min_symbol_; }
  double omega_wiener() const noexcept { return omega_wiener_; }  // all grid coefficients
  double aliasing_mass() const noexcept { return discarded_; }
  int eval_radius() const;  // expansion radius used at the origin

  double coefficient(const LatticeIndex& k) const { return omega()[k]; }
  const KernelExpansion& lagrange() const noexcept { return chi_; }
  double chi(std::span<const double> x) const { return chi_(x); }
  double chi_at(const LatticeIndex& j) const { return chi_.at(j); }

  // c = a * y on the torus grid
  SymbolCoefficients data_coefficients(const DataWindow& data) const;
  InterpolationValue interpolate(const DataWindow& data, std::span<const double> x) const;
  // many points at once; coefficient route only
  std::vector<double> interpolate_many(const DataWindow& data, std::span<const double> points) const;

  LebesgueEstimate lebesgue(int per_cell = 17) const;

 private:
  SymbolCoefficients sigma_;
  KernelExpansion chi_;
  int grid_;
  double min_symbol_;
  double omega_wiener_ = 0;
  double discarded_ = 0;
  double tail_tol_;
};

CardinalSystem build_cardinal(const Kernel& k, const SystemOptions& opt = {});

}  // namespace whl
