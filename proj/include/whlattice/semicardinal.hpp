#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "whlattice/expansion.hpp"
#include "whlattice/system.hpp"
#include "whlattice/wienerhopf.hpp"

namespace whl {

struct WindowTooLarge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CholeskyCheck {
  double residual = 0;        // max |T A - I| over interior rows and columns
  std::size_t unknowns = 0;
  bool triangular = true;     // G respects the order (ordered half-spaces only)
  double triangular_violation = 0;
};

class SemiCardinalSystem {
 public:
  SemiCardinalSystem(const KernelSymbol& ks, const HalfSpace& H, const SystemOptions& opt);
  SemiCardinalSystem(const KernelSymbol& ks, WienerHopfFactor factor, const SystemOptions& opt);

  const Kernel& kernel() const noexcept { return kernel_; }
  const HalfSpace& halfspace() const noexcept { return factor_.halfspace; }
  const WienerHopfFactor& factor() const noexcept { return factor_; }
  const SymbolCoefficients& sigma() const noexcept { return sigma_; }
  int grid() const noexcept { return factor_.grid; }
  int working_radius() const noexcept { return factor_.gamma.radius(); }

  // a_{k,j} = sum_{l in H} gamma_{k-l} gamma_{j-l}, summed directly
  double coefficient(const LatticeIndex& k, const LatticeIndex& j) const;
  std::vector<double> coefficients(std::span<const LatticeIndex> ks, std::span<const LatticeIndex> js,
                                   Exec exec = Exec::Parallel) const;
  // the whole column a_{., j} through omega_j = omega_+ P_+[zeta^j omega_+(1/zeta)] on the grid
  SymbolCoefficients column(const LatticeIndex& j) const;
  // batched; callers keep batches near kColumnChunk to bound memory
  std::vector<SymbolCoefficients> columns(std::span<const LatticeIndex> js) const;
  static constexpr std::size_t kColumnChunk = 16;

  KernelExpansion lagrange(const LatticeIndex& j) const;
  double lagrange_eval(const LatticeIndex& j, std::span<const double> x) const { return lagrange(j)(x); }

  // c = A y, via G (G^T y) with two grid convolutions
  SymbolCoefficients data_coefficients(const DataWindow& data) const;
  InterpolationValue interpolate(const DataWindow& data, std::span<const double> x) const;

  double schur_norm(std::span<const LatticeIndex> probes) const;
  // buffer < 0 means n / 4
  CholeskyCheck cholesky_residual(int n, int buffer = -1, std::size_t cap = 4096) const;

  // boundary-adjacent, mid and deep j
  std::vector<LatticeIndex> probe_set() const;

 private:
  void require_in_h(const LatticeIndex& k) const;

  Kernel kernel_;
  SymbolCoefficients sigma_;
  WienerHopfFactor factor_;
  TorusGrid ghat_;  // transformed gamma
  double tail_tol_;
};

SemiCardinalSystem build_semicardinal(const Kernel& k, const HalfSpace& H, const SystemOptions& opt = {});

FactorOptions factor_options(const SystemOptions& opt);

}  // namespace whl
