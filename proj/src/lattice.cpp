#include "whlattice/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace whl {

LatticeIndex::LatticeIndex(int dim) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) throw DimensionMismatch("lattice dimension out of range: " + std::to_string(dim));
}

LatticeIndex::LatticeIndex(std::initializer_list<int> coords) : LatticeIndex(static_cast<int>(coords.size())) {
  std::copy(coords.begin(), coords.end(), c_.begin());
}

LatticeIndex LatticeIndex::from(std::span<const int> coords) {
  LatticeIndex k(static_cast<int>(coords.size()));
  std::copy(coords.begin(), coords.end(), k.c_.begin());
  return k;
}

LatticeIndex LatticeIndex::unit(int dim, int axis, int value) {
  LatticeIndex k(dim);
  k[axis] = value;
  return k;
}

LatticeIndex LatticeIndex::operator-() const noexcept {
  LatticeIndex r = *this;
  for (int i = 0; i < dim_; ++i) r.c_[i] = -c_[i];
  return r;
}

void require_same_dim(const LatticeIndex& a, const LatticeIndex& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("index dimensions differ: " + a.str() + " vs " + b.str());
}

LatticeIndex operator+(const LatticeIndex& a, const LatticeIndex& b) {
  require_same_dim(a, b);
  LatticeIndex r = a;
  for (int i = 0; i < a.dim_; ++i) r.c_[i] += b.c_[i];
  return r;
}

LatticeIndex operator-(const LatticeIndex& a, const LatticeIndex& b) {
  require_same_dim(a, b);
  LatticeIndex r = a;
  for (int i = 0; i < a.dim_; ++i) r.c_[i] -= b.c_[i];
  return r;
}

int LatticeIndex::max_abs() const noexcept {
  int m = 0;
  for (int i = 0; i < dim_; ++i) m = std::max(m, std::abs(c_[i]));
  return m;
}

int LatticeIndex::sum() const noexcept {
  int s = 0;
  for (int i = 0; i < dim_; ++i) s += c_[i];
  return s;
}

double LatticeIndex::norm() const noexcept {
  double s = 0;
  for (int i = 0; i < dim_; ++i) s += double(c_[i]) * c_[i];
  return std::sqrt(s);
}

bool LatticeIndex::is_zero() const noexcept {
  for (int i = 0; i < dim_; ++i)
    if (c_[i] != 0) return false;
  return true;
}

std::string LatticeIndex::str() const {
  std::string s = "(";
  for (int i = 0; i < dim_; ++i) {
    if (i) s += ",";
    s += std::to_string(c_[i]);
  }
  return s + ")";
}

Box::Box(int dim, int radius) : dim_(dim), radius_(radius) {
  if (dim < 1 || dim > kMaxDim) throw DimensionMismatch("box dimension out of range");
  if (radius < 0) throw std::invalid_argument("box radius must be >= 0");
  size_ = 1;
  for (int i = 0; i < dim; ++i) size_ *= static_cast<std::size_t>(2 * radius + 1);
}

bool Box::contains(const LatticeIndex& k) const noexcept {
  if (k.dim() != dim_) return false;
  return k.max_abs() <= radius_;
}

std::size_t Box::offset(const LatticeIndex& k) const noexcept {
  std::size_t off = 0;
  const auto s = static_cast<std::size_t>(side());
  for (int i = 0; i < dim_; ++i) off = off * s + static_cast<std::size_t>(k[i] + radius_);
  return off;
}

LatticeIndex Box::index(std::size_t offset) const noexcept {
  LatticeIndex k(dim_);
  const auto s = static_cast<std::size_t>(side());
  for (int i = dim_ - 1; i >= 0; --i) {
    k[i] = static_cast<int>(offset % s) - radius_;
    offset /= s;
  }
  return k;
}

LinearOrder LinearOrder::lex(int dim) {
  std::vector<int> p(static_cast<std::size_t>(dim));
  std::iota(p.begin(), p.end(), 0);
  return lex(std::move(p));
}

LinearOrder LinearOrder::lex(std::vector<int> priority) {
  const int d = static_cast<int>(priority.size());
  if (d < 1 || d > kMaxDim) throw DimensionMismatch("lex priority has wrong length");
  auto sorted = priority;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < d; ++i)
    if (sorted[static_cast<std::size_t>(i)] != i) throw std::invalid_argument("lex priority is not a permutation");
  LinearOrder o(OrderKind::Lex, d);
  std::copy(priority.begin(), priority.end(), o.prio_.begin());
  return o;
}

LinearOrder LinearOrder::graded_lex(int dim) {
  if (dim < 1 || dim > kMaxDim) throw DimensionMismatch("graded lex dimension out of range");
  LinearOrder o(OrderKind::GradedLex, dim);
  // tie-break on the last coordinate first, then the one before it, ...
  for (int i = 0; i < dim; ++i) o.prio_[i] = dim - 1 - i;
  return o;
}

int LinearOrder::sign(const LatticeIndex& j) const noexcept {
  if (kind_ == OrderKind::GradedLex) {
    const int s = j.sum();
    if (s != 0) return s > 0 ? 1 : -1;
  }
  for (int i = 0; i < dim_; ++i) {
    const int v = j[prio_[i]];
    if (v != 0) return v > 0 ? 1 : -1;
  }
  return 0;
}

std::strong_ordering LinearOrder::compare(const LatticeIndex& j, const LatticeIndex& k) const {
  require_same_dim(j, k);
  if (j.dim() != dim_) throw DimensionMismatch("order dimension does not match index");
  const int s = sign(j - k);
  return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

const LatticeIndex& LinearOrder::min(const LatticeIndex& j, const LatticeIndex& k) const {
  return compare(j, k) == std::strong_ordering::greater ? k : j;
}

const LatticeIndex& LinearOrder::max(const LatticeIndex& j, const LatticeIndex& k) const {
  return compare(j, k) == std::strong_ordering::less ? k : j;
}

std::string LinearOrder::describe() const {
  if (kind_ == OrderKind::GradedLex) return "graded_lex";
  bool identity = true;
  for (int i = 0; i < dim_; ++i) identity = identity && prio_[i] == i;
  if (identity) return "lex";
  std::string s = "lex[";
  for (int i = 0; i < dim_; ++i) s += (i ? "," : "") + std::to_string(prio_[i] + 1);
  return s + "]";
}

HalfSpace HalfSpace::coordinate(int dim, int axis) {
  if (dim < 1 || dim > kMaxDim) throw DimensionMismatch("half-space dimension out of range");
  if (axis < 0 || axis >= dim)
    throw std::invalid_argument("coordinate half-space axis " + std::to_string(axis + 1) + " exceeds dimension " +
                                std::to_string(dim));
  return HalfSpace(Kind::Coordinate, dim, axis, LinearOrder::lex(dim));
}

HalfSpace HalfSpace::ordered(const LinearOrder& order) {
  return HalfSpace(Kind::Ordered, order.dim(), -1, order);
}

const LinearOrder& HalfSpace::order() const {
  if (kind_ != Kind::Ordered) throw std::logic_error("coordinate half-space has no linear order");
  return order_;
}

bool HalfSpace::contains(const LatticeIndex& j) const {
  if (j.dim() != dim_) throw DimensionMismatch("index " + j.str() + " does not match half-space dimension");
  return contains_unchecked(j);
}

std::vector<LatticeIndex> HalfSpace::window(int radius) const {
  if (radius < 0) throw std::invalid_argument("window radius must be >= 0");
  const Box box(dim_, radius);
  std::vector<LatticeIndex> out;
  for (std::size_t i = 0; i < box.size(); ++i) {
    auto k = box.index(i);
    if (contains_unchecked(k)) out.push_back(k);
  }
  if (kind_ == Kind::Ordered)
    std::sort(out.begin(), out.end(), [this](const LatticeIndex& a, const LatticeIndex& b) {
      return order_.sign(a - b) < 0;
    });
  return out;
}

std::string HalfSpace::describe() const {
  if (kind_ == Kind::Coordinate) return "coordinate:axis=" + std::to_string(axis_ + 1);
  return "order:" + order_.describe();
}

}  // namespace whl
