#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "whlattice/lattice.hpp"

namespace whl {

struct SymbolNotPositive : std::runtime_error {
  SymbolNotPositive(double min_value, double floor);
  double min_value;
  double floor;
};

struct UndersizedGrid : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Fourier coefficients on [-N, N]^d. Reads outside the box return 0.
class SymbolCoefficients {
 public:
  SymbolCoefficients() = default;
  SymbolCoefficients(int dim, int radius);
  static SymbolCoefficients delta(int dim, double value = 1.0);

  int dim() const noexcept { return box_.dim(); }
  int radius() const noexcept { return box_.radius(); }
  const Box& box() const noexcept { return box_; }
  std::size_t size() const noexcept { return v_.size(); }

  double operator[](const LatticeIndex& k) const noexcept {
    return box_.contains(k) ? v_[box_.offset(k)] : 0.0;
  }
  double& ref(const LatticeIndex& k);
  std::vector<double>& values() noexcept { return v_; }
  const std::vector<double>& values() const noexcept { return v_; }

  double wiener_norm() const noexcept;
  // t[r] = sum of |c_k| over r < |k|_inf <= N, for r = 0..N
  std::vector<double> tail_profile() const;
  SymbolCoefficients resized(int radius) const;
  // smallest box outside which every |c_k| <= abs_tol
  SymbolCoefficients trimmed(double abs_tol) const;
  double symmetry_defect() const noexcept;  // max |c_k - c_{-k}|

 private:
  Box box_;
  std::vector<double> v_;
};

// Values on the grid zeta_n = exp(2 pi i n / M), n in [0, M)^d, row-major.
class TorusGrid {
 public:
  TorusGrid() = default;
  TorusGrid(int dim, int points);

  int dim() const noexcept { return dim_; }
  int points() const noexcept { return m_; }
  std::size_t size() const noexcept { return v_.size(); }
  std::vector<std::complex<double>>& values() noexcept { return v_; }
  const std::vector<std::complex<double>>& values() const noexcept { return v_; }
  std::complex<double>& operator[](std::size_t i) noexcept { return v_[i]; }
  const std::complex<double>& operator[](std::size_t i) const noexcept { return v_[i]; }

  // offset of the grid slot holding frequency k (k taken mod M)
  std::size_t slot(const LatticeIndex& k) const noexcept;
  // centered representative of slot i, components in [-M/2, M/2)
  LatticeIndex centered(std::size_t i) const noexcept;

  double min_real() const noexcept;
  double max_abs_imag() const noexcept;

 private:
  int dim_ = 0;
  int m_ = 0;
  std::vector<std::complex<double>> v_;
};

// In-place multidimensional DFT. to_values: coefficients -> grid values
// (sum_k c_k zeta^k). Otherwise grid values -> coefficients (scaled by 1/M^d).
void transform(TorusGrid& g, bool to_values);

// Place a coefficient field on an M-grid (folding mod M) and return slot values.
TorusGrid coefficients_on_grid(const SymbolCoefficients& s, int M);

struct FromGrid {
  SymbolCoefficients coeffs;
  double discarded_relative = 0.0;  // dropped |c| mass / total |c| mass
  double max_imag = 0.0;            // largest imaginary part among the kept coefficients
};

// Takes grid *values*; transforms a private copy.
FromGrid coefficients_from_values(const TorusGrid& values, int radius);

SymbolCoefficients symbol_from_kernel(const SymbolCoefficients& samples);
TorusGrid grid_eval(const SymbolCoefficients& s, int M);
FromGrid from_grid(const TorusGrid& g, int radius);
SymbolCoefficients reciprocal(const SymbolCoefficients& s, int M, int radius, double floor = 1e-8);
SymbolCoefficients log_symbol(const SymbolCoefficients& s, int M, int radius, double floor = 1e-8);
SymbolCoefficients multiply(const SymbolCoefficients& u, const SymbolCoefficients& v);
double min_on_torus(const SymbolCoefficients& s, int M);
double wiener_norm(const SymbolCoefficients& s);

// Grid-level helpers used by the pipelines; they throw SymbolNotPositive.
void invert_values(TorusGrid& g, double floor);
void log_values(TorusGrid& g, double floor);

int default_grid_size(int radius);  // smallest power of two >= 8N

// CSV dump: header k_1..k_d,value; only entries with |c| > 0 unless all_entries
std::string to_csv(const SymbolCoefficients& s, bool all_entries = false);
SymbolCoefficients from_csv(const std::string& text);

}  // namespace whl
