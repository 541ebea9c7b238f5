#pragma once

// Hot loops with a serial reference path and an OpenMP path. Every output
// element is computed by one thread in a fixed order, so both paths give
// bit-identical results; reductions are finished serially.

#include <cstddef>
#include <span>
#include <vector>

#include "whlattice/lattice.hpp"

namespace whl {

class Kernel;
class SymbolCoefficients;

enum class Exec { Serial, Parallel };

int max_threads();

// f(i) for i in [0, n); the parallel path hands out chunks dynamically, each
// index is still handled by exactly one thread.
template <class F>
void run_indexed(std::size_t n, Exec exec, F&& f) {
  if (exec == Exec::Parallel) {
    const auto sn = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < sn; ++i) f(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) f(i);
  }
}

// out[i] = phi(box.index(i))
void sample_lattice_box(const Kernel& k, const Box& box, double* out, Exec exec);

// sum over n in box of |phi(x - n)|
double abs_shift_sum(const Kernel& k, const double* x, const Box& box, Exec exec);

// out[p] = sum_{|k|_inf <= radius[p]} c_k phi(x_p - k), points packed d per row.
// An empty radius span, or radius < 0, means the whole coefficient box.
void shift_sums(const Kernel& k, const SymbolCoefficients& c, std::span<const double> points,
                std::span<const int> radius, std::span<double> out, Exec exec);

// same at lattice points, through Kernel::at (works for lattice-only kernels)
void lattice_shift_sums(const Kernel& k, const SymbolCoefficients& c, std::span<const LatticeIndex> js,
                        std::span<const int> radius, std::span<double> out, Exec exec);

// out[p] = sum_k c_k exp(i k . t_p), real part; reference for the grid transform
void trig_eval(const SymbolCoefficients& c, std::span<const double> t, std::span<double> out, Exec exec);

// dense [phi(r_i - c_j)] for lattice rows/cols, column-major rows x cols
void toeplitz_block(const Kernel& k, std::span<const LatticeIndex> rows, std::span<const LatticeIndex> cols,
                    double* out, Exec exec);

// out[q] = sum_{l in H} g[k_q - l] g[j_q - l] with g zero off its box; l runs
// row-major over the overlap of the two shifted boxes
void gram_entries(const SymbolCoefficients& g, const HalfSpace& H, std::span<const LatticeIndex> ks,
                  std::span<const LatticeIndex> js, std::span<double> out, Exec exec);

}  // namespace whl
