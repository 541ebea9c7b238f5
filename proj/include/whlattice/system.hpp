#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "whlattice/kernels.hpp"
#include "whlattice/lattice.hpp"
#include "whlattice/symbols.hpp"

namespace whl {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SystemOptions {
  int symbol_radius = 40;  // N: box of the reported sigma coefficients
  int grid = 512;          // M: torus grid per axis
  std::size_t sample_budget = std::size_t(1) << 20;
  double positivity_floor = 1e-8;
  double residual_tol = 1e-7;
  double leak_tol = 1e-7;
  double tail_tol = 1e-10;  // truncation of kernel expansions at evaluation time
  double trim_tol = 1e-14;  // edge coefficients of a and gamma below this, relative to the Wiener norm, are cut
  int eval_radius = -1;     // fixed expansion radius for chi, if >= 0

  void validate() const;  // throws ConfigError
};

// sigma sampled on the lattice and on the torus grid
struct KernelSymbol {
  Kernel kernel;
  SymbolCoefficients sigma;  // phi(j), |j|_inf <= N
  TorusGrid values;          // sigma on the M-grid (folded samples)
  int sample_radius = 0;
  double sample_tail = 0;
  double min_value = 0;
};
KernelSymbol kernel_symbol(const Kernel& k, const SystemOptions& opt);

enum class Extension { Zero, Periodic };

// finite window of lattice data with an extension policy
struct DataWindow {
  std::vector<LatticeIndex> points;
  std::vector<double> values;
  Extension extension = Extension::Zero;
  int periods = 2;  // copies per side when materialising a periodic extension

  int dim() const { return points.empty() ? 0 : points.front().dim(); }
  void check() const;
  // periodic data as an explicit zero-extended window
  DataWindow materialized() const;
  // smallest box radius holding all points
  int radius() const;
};

struct InterpolationValue {
  double lagrange = 0;     // sum_j y_j chi(x - j)  /  sum_j y_j chi_j(x)
  double coefficient = 0;  // sum_k c_k phi(x - k)
};

}  // namespace whl
