#include "whlattice/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "whlattice/kernels.hpp"
#include "whlattice/symbols.hpp"

namespace whl {

namespace {

// Visit every index of [lo, hi] (inclusive, per axis) row-major, axis 0 slowest.
template <class F>
void for_each_in_range(int d, const int* lo, const int* hi, F&& f) {
  for (int i = 0; i < d; ++i)
    if (lo[i] > hi[i]) return;
  LatticeIndex k(d);
  for (int i = 0; i < d; ++i) k[i] = lo[i];
  while (true) {
    f(k);
    int a = d - 1;
    while (a >= 0 && k[a] == hi[a]) {
      k[a] = lo[a];
      --a;
    }
    if (a < 0) return;
    ++k[a];
  }
}

template <class F>
void run(std::size_t n, Exec exec, F&& f) {
  run_indexed(n, exec, std::forward<F>(f));
}

}  // namespace

int max_threads() { return omp_get_max_threads(); }

void sample_lattice_box(const Kernel& k, const Box& box, double* out, Exec exec) {
  run(box.size(), exec, [&](std::size_t i) { out[i] = k.at(box.index(i)); });
}

double abs_shift_sum(const Kernel& k, const double* x, const Box& box, Exec exec) {
  std::vector<double> part(box.size());
  const int d = k.dim();
  run(box.size(), exec, [&](std::size_t i) {
    const auto n = box.index(i);
    double y[kMaxDim];
    for (int a = 0; a < d; ++a) y[a] = x[a] - n[a];
    part[i] = std::abs(k.eval(y));
  });
  double s = 0;
  for (double v : part) s += v;
  return s;
}

void shift_sums(const Kernel& k, const SymbolCoefficients& c, std::span<const double> points,
                std::span<const int> radius, std::span<double> out, Exec exec) {
  const int d = c.dim();
  if (k.dim() != d) throw DimensionMismatch("kernel and coefficient dimensions differ");
  const std::size_t np = out.size();
  if (points.size() != np * static_cast<std::size_t>(d) || (!radius.empty() && radius.size() != np))
    throw std::invalid_argument("shift_sums: inconsistent array sizes");
  const Box& box = c.box();
  const auto& v = c.values();
  run(np, exec, [&](std::size_t p) {
    const double* x = points.data() + p * static_cast<std::size_t>(d);
    const int r = radius.empty() || radius[p] < 0 ? box.radius() : std::min(radius[p], box.radius());
    int lo[kMaxDim], hi[kMaxDim];
    for (int a = 0; a < d; ++a) {
      lo[a] = -r;
      hi[a] = r;
    }
    double acc = 0;
    double y[kMaxDim];
    for_each_in_range(d, lo, hi, [&](const LatticeIndex& kk) {
      const double ck = v[box.offset(kk)];
      if (ck == 0.0) return;
      for (int a = 0; a < d; ++a) y[a] = x[a] - kk[a];
      acc += ck * k.eval(y);
    });
    out[p] = acc;
  });
}

void lattice_shift_sums(const Kernel& k, const SymbolCoefficients& c, std::span<const LatticeIndex> js,
                        std::span<const int> radius, std::span<double> out, Exec exec) {
  const int d = c.dim();
  if (k.dim() != d) throw DimensionMismatch("kernel and coefficient dimensions differ");
  if (js.size() != out.size() || (!radius.empty() && radius.size() != out.size()))
    throw std::invalid_argument("lattice_shift_sums: inconsistent array sizes");
  const Box& box = c.box();
  const auto& v = c.values();
  run(out.size(), exec, [&](std::size_t p) {
    const int r = radius.empty() || radius[p] < 0 ? box.radius() : std::min(radius[p], box.radius());
    int lo[kMaxDim], hi[kMaxDim];
    for (int a = 0; a < d; ++a) {
      lo[a] = -r;
      hi[a] = r;
    }
    double acc = 0;
    for_each_in_range(d, lo, hi, [&](const LatticeIndex& kk) {
      const double ck = v[box.offset(kk)];
      if (ck != 0.0) acc += ck * k.at(js[p] - kk);
    });
    out[p] = acc;
  });
}

void trig_eval(const SymbolCoefficients& c, std::span<const double> t, std::span<double> out, Exec exec) {
  const int d = c.dim();
  if (t.size() != out.size() * static_cast<std::size_t>(d)) throw std::invalid_argument("trig_eval: bad sizes");
  const Box& box = c.box();
  run(out.size(), exec, [&](std::size_t p) {
    const double* tp = t.data() + p * static_cast<std::size_t>(d);
    double acc = 0;
    for (std::size_t i = 0; i < box.size(); ++i) {
      const double ck = c.values()[i];
      if (ck == 0.0) continue;
      const auto k = box.index(i);
      double ph = 0;
      for (int a = 0; a < d; ++a) ph += k[a] * tp[a];
      acc += ck * std::cos(ph);
    }
    out[p] = acc;
  });
}

void toeplitz_block(const Kernel& k, std::span<const LatticeIndex> rows, std::span<const LatticeIndex> cols,
                    double* out, Exec exec) {
  const std::size_t nr = rows.size();
  run(cols.size(), exec, [&](std::size_t j) {
    for (std::size_t i = 0; i < nr; ++i) out[j * nr + i] = k.at(rows[i] - cols[j]);
  });
}

void gram_entries(const SymbolCoefficients& g, const HalfSpace& H, std::span<const LatticeIndex> ks,
                  std::span<const LatticeIndex> js, std::span<double> out, Exec exec) {
  if (ks.size() != js.size() || ks.size() != out.size()) throw std::invalid_argument("gram_entries: bad sizes");
  const int d = g.dim();
  const int R = g.radius();
  const Box& box = g.box();
  const auto& v = g.values();
  run(out.size(), exec, [&](std::size_t q) {
    const LatticeIndex& k = ks[q];
    const LatticeIndex& j = js[q];
    int lo[kMaxDim], hi[kMaxDim];
    for (int a = 0; a < d; ++a) {
      lo[a] = std::max(k[a], j[a]) - R;
      hi[a] = std::min(k[a], j[a]) + R;
    }
    double acc = 0;
    for_each_in_range(d, lo, hi, [&](const LatticeIndex& l) {
      if (!H.contains_unchecked(l)) return;
      const double a = v[box.offset(k - l)];
      if (a == 0.0) return;
      acc += a * v[box.offset(j - l)];
    });
    out[q] = acc;
  });
}

}  // namespace whl
