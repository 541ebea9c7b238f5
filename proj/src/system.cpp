#include "whlattice/system.hpp"

#include <algorithm>
#include <map>

namespace whl {

void SystemOptions::validate() const {
  if (symbol_radius < 0) throw ConfigError("symbol radius must be >= 0");
  if (grid < 2 * (2 * symbol_radius + 1))
    throw ConfigError("grid size M=" + std::to_string(grid) + " violates M >= 2(2N+1) with N=" +
                      std::to_string(symbol_radius));
  if (!(positivity_floor > 0) || !(residual_tol > 0) || !(leak_tol > 0) || !(tail_tol > 0) || !(trim_tol > 0))
    throw ConfigError("all tolerances must be positive");
  if (sample_budget < 1) throw ConfigError("sample budget must be positive");
}

KernelSymbol kernel_symbol(const Kernel& k, const SystemOptions& opt) {
  opt.validate();
  auto samples = lattice_samples(k, opt.symbol_radius);
  auto grid = kernel_symbol_grid(k, opt.grid, opt.sample_budget);
  KernelSymbol ks{k, symbol_from_kernel(samples.values), std::move(grid.values), grid.sample_radius,
                  grid.sample_tail, 0.0};
  ks.min_value = ks.values.min_real();
  if (!(ks.min_value > opt.positivity_floor)) throw SymbolNotPositive(ks.min_value, opt.positivity_floor);
  return ks;
}

void DataWindow::check() const {
  if (points.size() != values.size()) throw std::invalid_argument("data window: points and values differ in length");
  if (points.empty()) throw std::invalid_argument("data window is empty");
  const int d = points.front().dim();
  for (const auto& p : points)
    if (p.dim() != d) throw DimensionMismatch("data window mixes dimensions");
}

int DataWindow::radius() const {
  int r = 0;
  for (const auto& p : points) r = std::max(r, p.max_abs());
  return r;
}

DataWindow DataWindow::materialized() const {
  check();
  if (extension == Extension::Zero) return *this;
  const int d = dim();
  LatticeIndex lo = points.front(), hi = points.front();
  for (const auto& p : points)
    for (int a = 0; a < d; ++a) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  std::map<std::vector<int>, double> base;
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<int> key(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) key[static_cast<std::size_t>(a)] = points[i][a];
    base[key] = values[i];
  }
  DataWindow out;
  const Box copies(d, periods);
  for (std::size_t c = 0; c < copies.size(); ++c) {
    const auto shift = copies.index(c);
    for (const auto& [key, y] : base) {
      LatticeIndex p(d);
      for (int a = 0; a < d; ++a) p[a] = key[static_cast<std::size_t>(a)] + shift[a] * (hi[a] - lo[a] + 1);
      out.points.push_back(p);
      out.values.push_back(y);
    }
  }
  return out;
}

}  // namespace whl
