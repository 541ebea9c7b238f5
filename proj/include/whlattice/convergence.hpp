#pragma once

#include <span>
#include <vector>

#include "whlattice/cardinal.hpp"
#include "whlattice/expansion.hpp"
#include "whlattice/semicardinal.hpp"

namespace whl {

// box [lo, hi]^d with a fixed step, around the origin
struct SampleGrid {
  int dim = 1;
  double lo = -3.0;
  double hi = 3.0;
  double step = 0.25;

  std::size_t per_axis() const;
  std::size_t size() const;
  std::vector<double> points() const;  // packed dim per row, axis 0 slowest
};

// eta(x) = sum_{k in H} gamma_k phi(x - k)
class EtaFunction {
 public:
  EtaFunction(const Kernel& k, const WienerHopfFactor& f, double tol = 1e-10);

  const Kernel& kernel() const noexcept { return eta_.kernel(); }
  const WienerHopfFactor& factor() const noexcept { return factor_; }
  const KernelExpansion& expansion() const noexcept { return eta_; }
  double operator()(std::span<const double> x) const { return eta_(x); }
  // ||gamma||_W * |phi|_inf
  double bound() const;

 private:
  WienerHopfFactor factor_;
  KernelExpansion eta_;
};

struct GapReport {
  LatticeIndex j;
  double gap = 0;         // max over the grid of |chi(x) - chi_j(x + j)|
  double bound = 0;       // sup_eta * gamma_tail
  double sup_eta = 0;     // sampled; a lower bound of the true sup
  double gamma_tail = 0;  // sum of |gamma_m| over m in H with j - m outside H
};

// max |chi(x) - sum_{l in H} gamma_l eta(x + l)| on the grid
// bank: optional shared kernel samples; used when its kernel and grid match
double chi_via_eta(const EtaFunction& e, const CardinalSystem& cs, const SampleGrid& grid,
                   const SampleBank* bank = nullptr);
// max |chi_j(x) - sum_{l in H, j-l in H} gamma_{j-l} eta(x - l)| on the grid
double chij_via_eta(const EtaFunction& e, const SemiCardinalSystem& sc, const LatticeIndex& j,
                    const SampleGrid& grid, const SampleBank* bank = nullptr);

double gamma_tail(const WienerHopfFactor& f, const LatticeIndex& j);

std::vector<GapReport> convergence_gap(const EtaFunction& e, const CardinalSystem& cs, const SemiCardinalSystem& sc,
                                       std::span<const LatticeIndex> js, const SampleGrid& grid,
                                       const SampleBank* bank = nullptr);
GapReport convergence_gap(const EtaFunction& e, const CardinalSystem& cs, const SemiCardinalSystem& sc,
                          const LatticeIndex& j, const SampleGrid& grid, const SampleBank* bank = nullptr);

// j^(n): the largest element of {k in H : ||k||_2 <= n}; for a coordinate half-space n e_d
LatticeIndex exhausting_element(const HalfSpace& H, int n);

}  // namespace whl
