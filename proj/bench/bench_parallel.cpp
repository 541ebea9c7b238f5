// serial reference vs OpenMP path for the hot loops; Arg(0) serial, Arg(1) parallel
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "whlattice/kernels.hpp"
#include "whlattice/lattice.hpp"
#include "whlattice/parallel.hpp"
#include "whlattice/symbols.hpp"

using namespace whl;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::Parallel : Exec::Serial; }

SymbolCoefficients smooth_coeffs(int dim, int radius) {
  SymbolCoefficients c(dim, radius);
  for (std::size_t i = 0; i < c.size(); ++i) c.values()[i] = std::cos(0.1 * double(i)) / (1.0 + double(i % 17));
  return c;
}

void BM_sample_box(benchmark::State& st) {
  const auto k = Kernel::gim(2, 1.0, 2.0);
  const Box box(2, 60);
  std::vector<double> out(box.size());
  for (auto _ : st) {
    sample_lattice_box(k, box, out.data(), exec_of(st));
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_shift_sums(benchmark::State& st) {
  const auto k = Kernel::gaussian(2, 1.0);
  const auto c = smooth_coeffs(2, 12);
  std::vector<double> pts;
  for (int i = 0; i < 400; ++i) {
    pts.push_back(0.37 * i - 70);
    pts.push_back(std::sin(double(i)) * 9);
  }
  std::vector<double> out(400);
  for (auto _ : st) {
    shift_sums(k, c, pts, {}, out, exec_of(st));
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_trig_eval(benchmark::State& st) {
  const auto c = smooth_coeffs(1, 200);
  std::vector<double> t(4096), out(4096);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = 0.0015 * double(i);
  for (auto _ : st) {
    trig_eval(c, t, out, exec_of(st));
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_toeplitz_block(benchmark::State& st) {
  const auto k = Kernel::matern(2, 2.0);
  std::vector<LatticeIndex> idx;
  for (int a = -12; a <= 12; ++a)
    for (int b = -12; b <= 12; ++b) idx.push_back(LatticeIndex{a, b});
  std::vector<double> out(idx.size() * idx.size());
  for (auto _ : st) {
    toeplitz_block(k, idx, idx, out.data(), exec_of(st));
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_gram_entries(benchmark::State& st) {
  const auto g = smooth_coeffs(2, 20);
  const auto H = HalfSpace::coordinate(2, 1);
  std::vector<LatticeIndex> ks, js;
  for (int a = 0; a < 30; ++a)
    for (int b = 0; b < 30; ++b) {
      ks.push_back(LatticeIndex{a - 15, b});
      js.push_back(LatticeIndex{15 - a, 29 - b});
    }
  std::vector<double> out(ks.size());
  for (auto _ : st) {
    gram_entries(g, H, ks, js, out, exec_of(st));
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(BM_sample_box)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_shift_sums)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_trig_eval)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_toeplitz_block)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gram_entries)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
