#include "whlattice/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace whl {

KernelExpansion::KernelExpansion(Kernel k, SymbolCoefficients c, double tol)
    : k_(std::move(k)), c_(std::move(c)), tail_(c_.tail_profile()), tol_(tol) {
  if (k_.dim() != c_.dim()) throw DimensionMismatch("expansion: kernel and coefficient dimensions differ");
}

int KernelExpansion::radius_for(const double* x) const {
  double xm = 0;
  for (int a = 0; a < k_.dim(); ++a) xm = std::max(xm, std::abs(x[a]));
  const int n = c_.radius();
  for (int r = 0; r < n; ++r) {
    const double t = tail_[static_cast<std::size_t>(r)];
    if (t == 0.0) return r;
    if (r - xm > 0 && t * k_.decay_bound(r - xm) <= tol_) return r;
  }
  return n;
}

double KernelExpansion::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != k_.dim()) throw DimensionMismatch("expansion: point dimension mismatch");
  if (!k_.full_eval()) throw CapabilityError(k_.name() + " cannot be evaluated off the lattice");
  const int r = radius_for(x.data());
  double out = 0;
  shift_sums(k_, c_, x, std::span<const int>(&r, 1), std::span<double>(&out, 1), Exec::Serial);
  return out;
}

double KernelExpansion::at(const LatticeIndex& j) const {
  const int d = k_.dim();
  if (j.dim() != d) throw DimensionMismatch("expansion: index dimension mismatch");
  double x[kMaxDim];
  for (int a = 0; a < d; ++a) x[a] = j[a];
  const int r = radius_for(x);
  double out = 0;
  lattice_shift_sums(k_, c_, std::span<const LatticeIndex>(&j, 1), std::span<const int>(&r, 1),
                     std::span<double>(&out, 1), Exec::Serial);
  return out;
}

std::vector<double> KernelExpansion::at_many(std::span<const LatticeIndex> js, Exec exec) const {
  const int d = k_.dim();
  std::vector<int> radius(js.size());
  int reach = 0;
  for (std::size_t p = 0; p < js.size(); ++p) {
    if (js[p].dim() != d) throw DimensionMismatch("expansion: index dimension mismatch");
    double x[kMaxDim];
    for (int a = 0; a < d; ++a) x[a] = js[p][a];
    radius[p] = radius_for(x);
    reach = std::max(reach, js[p].max_abs() + radius[p]);
  }
  std::vector<double> out(js.size());
  const Box table(d, reach);
  // a table much larger than the work it saves is not worth sampling
  if (table.size() > (std::size_t(1) << 24)) {
    lattice_shift_sums(k_, c_, js, radius, out, exec);
    return out;
  }
  std::vector<double> phi(table.size());
  sample_lattice_box(k_, table, phi.data(), exec);
  const Box& box = c_.box();
  run_indexed(js.size(), exec, [&](std::size_t p) {
    const int r = radius[p];
    double acc = 0;
    for (std::size_t i = 0; i < box.size(); ++i) {
      const double ck = c_.values()[i];
      if (ck == 0.0) continue;
      const LatticeIndex l = box.index(i);
      if (l.max_abs() > r) continue;
      acc += ck * phi[table.offset(js[p] - l)];
    }
    out[p] = acc;
  });
  return out;
}

std::vector<double> KernelExpansion::eval_many(std::span<const double> points, Exec exec) const {
  const auto d = static_cast<std::size_t>(k_.dim());
  if (points.size() % d) throw DimensionMismatch("expansion: packed points have wrong length");
  if (!k_.full_eval()) throw CapabilityError(k_.name() + " cannot be evaluated off the lattice");
  const std::size_t n = points.size() / d;
  std::vector<int> radius(n);
  for (std::size_t p = 0; p < n; ++p) radius[p] = radius_for(points.data() + p * d);
  std::vector<double> out(n);
  shift_sums(k_, c_, points, radius, out, exec);
  return out;
}

ShiftedTable::ShiftedTable(const Kernel& k, const SymbolCoefficients& c, int M)
    : k_(k), m_(M), chat_(coefficients_on_grid(c, M)) {
  if (!k.full_eval()) throw CapabilityError(k.name() + " cannot be evaluated off the lattice");
  transform(chat_, false);
}

TorusGrid shifted_samples(const Kernel& k, std::span<const double> x0, int M) {
  if (!k.full_eval()) throw CapabilityError(k.name() + " cannot be evaluated off the lattice");
  const int d = k.dim();
  if (static_cast<int>(x0.size()) != d) throw DimensionMismatch("shifted samples: offset dimension mismatch");
  TorusGrid u(d, M);
  run_indexed(u.size(), Exec::Parallel, [&](std::size_t i) {
    const LatticeIndex m = u.centered(i);
    double y[kMaxDim];
    for (int a = 0; a < d; ++a) y[a] = x0[static_cast<std::size_t>(a)] + m[a];
    u[i] = k.eval(y);
  });
  transform(u, false);
  return u;
}

struct SampleBank::Impl {
  std::mutex mu;
  std::map<std::vector<long long>, std::unique_ptr<TorusGrid>> grids;
};

SampleBank::SampleBank(Kernel k, int M) : k_(std::move(k)), m_(M), impl_(new Impl) {
  if (!k_.full_eval()) throw CapabilityError(k_.name() + " cannot be evaluated off the lattice");
}

SampleBank::~SampleBank() { delete impl_; }

const TorusGrid& SampleBank::get(std::span<const double> x0) const {
  if (static_cast<int>(x0.size()) != k_.dim()) throw DimensionMismatch("sample bank: offset dimension mismatch");
  std::vector<long long> key;
  for (double v : x0) key.push_back(std::llround(v * 1e12));
  {
    std::lock_guard lock(impl_->mu);
    const auto it = impl_->grids.find(key);
    if (it != impl_->grids.end()) return *it->second;
  }
  auto g = std::make_unique<TorusGrid>(shifted_samples(k_, x0, m_));
  std::lock_guard lock(impl_->mu);
  auto [it, fresh] = impl_->grids.try_emplace(key, std::move(g));
  return *it->second;
}

std::size_t SampleBank::size() const {
  std::lock_guard lock(impl_->mu);
  return impl_->grids.size();
}

std::vector<double> ShiftedTable::apply(const TorusGrid& samples) const {
  if (samples.points() != m_ || samples.dim() != k_.dim()) throw DimensionMismatch("shifted table: sample grid mismatch");
  TorusGrid u = samples;
  const std::size_t n = u.size();
  for (std::size_t i = 0; i < n; ++i) u[i] *= chat_[i];
  transform(u, true);
  std::vector<double> out(n);
  const double scale = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = u[i].real() * scale;
  return out;
}

}  // namespace whl
