#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace whl {

inline constexpr int kMaxDim = 4;

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Point of Z^d, d <= kMaxDim. Unused slots stay zero so defaulted == works.
class LatticeIndex {
 public:
  LatticeIndex() = default;
  explicit LatticeIndex(int dim);
  LatticeIndex(std::initializer_list<int> coords);
  static LatticeIndex from(std::span<const int> coords);
  static LatticeIndex unit(int dim, int axis, int value = 1);

  int dim() const noexcept { return dim_; }
  int operator[](int i) const noexcept { return c_[static_cast<std::size_t>(i)]; }
  int& operator[](int i) noexcept { return c_[static_cast<std::size_t>(i)]; }

  LatticeIndex operator-() const noexcept;
  friend LatticeIndex operator+(const LatticeIndex& a, const LatticeIndex& b);
  friend LatticeIndex operator-(const LatticeIndex& a, const LatticeIndex& b);
  friend bool operator==(const LatticeIndex&, const LatticeIndex&) = default;

  int max_abs() const noexcept;
  int sum() const noexcept;
  double norm() const noexcept;
  bool is_zero() const noexcept;
  std::string str() const;

 private:
  std::array<int, kMaxDim> c_{};
  int dim_ = 0;
};

void require_same_dim(const LatticeIndex& a, const LatticeIndex& b);

// Cube [-r, r]^d with row-major linear offsets, axis 0 slowest.
class Box {
 public:
  Box() = default;
  Box(int dim, int radius);

  int dim() const noexcept { return dim_; }
  int radius() const noexcept { return radius_; }
  int side() const noexcept { return 2 * radius_ + 1; }
  std::size_t size() const noexcept { return size_; }

  bool contains(const LatticeIndex& k) const noexcept;
  std::size_t offset(const LatticeIndex& k) const noexcept;  // caller checks contains
  LatticeIndex index(std::size_t offset) const noexcept;

 private:
  int dim_ = 0;
  int radius_ = 0;
  std::size_t size_ = 0;
};

enum class OrderKind { Lex, GradedLex };

class LinearOrder {
 public:
  // priority[0] is the most significant axis (0-based)
  static LinearOrder lex(int dim);
  static LinearOrder lex(std::vector<int> priority);
  static LinearOrder graded_lex(int dim);

  OrderKind kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }
  std::span<const int> priority() const noexcept { return {prio_.data(), static_cast<std::size_t>(dim_)}; }

  std::strong_ordering compare(const LatticeIndex& j, const LatticeIndex& k) const;
  // sign of j relative to 0, no dimension check
  int sign(const LatticeIndex& j) const noexcept;
  const LatticeIndex& min(const LatticeIndex& j, const LatticeIndex& k) const;
  const LatticeIndex& max(const LatticeIndex& j, const LatticeIndex& k) const;
  std::string describe() const;

 private:
  LinearOrder(OrderKind kind, int dim) : kind_(kind), dim_(dim) {}
  OrderKind kind_;
  int dim_;
  std::array<int, kMaxDim> prio_{};
};

class HalfSpace {
 public:
  enum class Kind { Coordinate, Ordered };

  static HalfSpace coordinate(int dim, int axis);  // axis 0-based
  static HalfSpace ordered(const LinearOrder& order);

  Kind kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }
  int axis() const noexcept { return axis_; }
  bool is_ordered() const noexcept { return kind_ == Kind::Ordered; }
  const LinearOrder& order() const;  // throws for Coordinate

  bool contains(const LatticeIndex& j) const;
  bool contains_unchecked(const LatticeIndex& j) const noexcept {
    return kind_ == Kind::Coordinate ? j[axis_] >= 0 : order_.sign(j) >= 0;
  }

  // H ∩ [-r, r]^d, order-sorted when Ordered, row-major otherwise
  std::vector<LatticeIndex> window(int radius) const;

  // "coordinate:axis=2", "order:lex", "order:graded_lex", ...
  std::string describe() const;

 private:
  HalfSpace(Kind kind, int dim, int axis, LinearOrder order)
      : kind_(kind), dim_(dim), axis_(axis), order_(order) {}
  Kind kind_;
  int dim_;
  int axis_;
  LinearOrder order_;
};

}  // namespace whl
