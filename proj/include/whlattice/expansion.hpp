#pragma once

#include <span>
#include <vector>

#include "whlattice/kernels.hpp"
#include "whlattice/parallel.hpp"
#include "whlattice/symbols.hpp"

namespace whl {

// f(x) = sum_k c_k phi(x - k). The sum at x is cut at the smallest box radius R
// with tail_c(R) * decay_bound(R - |x|_inf) <= tol, a rigorous bound on what is left out.
class KernelExpansion {
 public:
  KernelExpansion(Kernel k, SymbolCoefficients c, double tol = 1e-10);

  const Kernel& kernel() const noexcept { return k_; }
  const SymbolCoefficients& coeffs() const noexcept { return c_; }
  double tolerance() const noexcept { return tol_; }

  int radius_for(const double* x) const;
  double operator()(std::span<const double> x) const;
  double at(const LatticeIndex& j) const;  // lattice points; fine for lattice-only kernels
  // many lattice points; phi is sampled once on the box the sums need
  std::vector<double> at_many(std::span<const LatticeIndex> js, Exec exec = Exec::Parallel) const;
  // points packed dim() per row
  std::vector<double> eval_many(std::span<const double> points, Exec exec = Exec::Parallel) const;

 private:
  Kernel k_;
  SymbolCoefficients c_;
  std::vector<double> tail_;
  double tol_;
};

// transformed samples phi(x0 + m), m in the centered M-box; shared by tables of one offset
TorusGrid shifted_samples(const Kernel& k, std::span<const double> x0, int M);

// shifted_samples memoized by offset. The samples depend on kernel, M and x0 only,
// so one bank serves every coefficient field of a kernel. Thread-safe.
class SampleBank {
 public:
  SampleBank(Kernel k, int M);
  ~SampleBank();
  SampleBank(const SampleBank&) = delete;
  SampleBank& operator=(const SampleBank&) = delete;

  const Kernel& kernel() const noexcept { return k_; }
  int points() const noexcept { return m_; }
  const TorusGrid& get(std::span<const double> x0) const;
  std::size_t size() const;

 private:
  struct Impl;
  Kernel k_;
  int m_;
  Impl* impl_;
};

// S(n) = sum_k c_k phi(x0 + n - k) for every n in the centered M-box at once, by
// a cyclic convolution of c with the samples phi(x0 + m), m in [-M/2, M/2)^d.
// Wrap-around error is a product of the two tails.
class ShiftedTable {
 public:
  ShiftedTable(const Kernel& k, const SymbolCoefficients& c, int M);

  int points() const noexcept { return m_; }
  // values indexed by TorusGrid slots of n
  std::vector<double> table(std::span<const double> x0) const { return apply(shifted_samples(k_, x0, m_)); }
  std::vector<double> apply(const TorusGrid& samples) const;
  std::size_t slot(const LatticeIndex& n) const noexcept { return chat_.slot(n); }

 private:
  Kernel k_;
  int m_;
  TorusGrid chat_;  // transformed coefficients
};

}  // namespace whl
