#include <algorithm>

#include "doctest.h"
#include "whlattice/lattice.hpp"

using namespace whl;

TEST_SUITE("lattice") {
  TEST_CASE("index arithmetic and norms") {
    const LatticeIndex a{1, -3}, b{2, 5};
    CHECK(a + b == LatticeIndex{3, 2});
    CHECK(a - b == LatticeIndex{-1, -8});
    CHECK(-a == LatticeIndex{-1, 3});
    CHECK(a.max_abs() == 3);
    CHECK(a.sum() == -2);
    CHECK(LatticeIndex{3, 4}.norm() == doctest::Approx(5.0));
    CHECK(LatticeIndex(2).is_zero());
    CHECK_THROWS_AS(require_same_dim(LatticeIndex{1}, LatticeIndex{1, 2}), DimensionMismatch);
  }

  TEST_CASE("box offsets round trip") {
    const Box box(3, 2);
    CHECK(box.size() == 125);
    for (std::size_t i = 0; i < box.size(); ++i) CHECK(box.offset(box.index(i)) == i);
    CHECK(box.index(0) == LatticeIndex{-2, -2, -2});
    CHECK_FALSE(box.contains(LatticeIndex{0, 3, 0}));
  }

  TEST_CASE("lex order") {
    const auto lex = LinearOrder::lex(2);
    CHECK(lex.compare(LatticeIndex{0, 5}, LatticeIndex{1, -3}) == std::strong_ordering::less);
    CHECK(lex.compare(LatticeIndex{4, 4}, LatticeIndex{4, 4}) == std::strong_ordering::equal);
    CHECK(lex.min(LatticeIndex{1, -3}, LatticeIndex{0, 5}) == LatticeIndex{0, 5});
    CHECK_THROWS_AS(lex.compare(LatticeIndex{1}, LatticeIndex{1, 2}), DimensionMismatch);
  }

  TEST_CASE("graded lex order") {
    const auto g = LinearOrder::graded_lex(2);
    CHECK(g.compare(LatticeIndex{1, 0}, LatticeIndex{0, 1}) == std::strong_ordering::less);
    CHECK(g.min(LatticeIndex{2, 0}, LatticeIndex{0, 2}) == LatticeIndex{2, 0});
    CHECK(g.compare(LatticeIndex{-5, 0}, LatticeIndex{0, -4}) == std::strong_ordering::less);
  }

  TEST_CASE("orders are translation invariant") {
    for (const auto& ord : {LinearOrder::lex(2), LinearOrder::graded_lex(2), LinearOrder::lex({1, 0})}) {
      const Box box(2, 3);
      const LatticeIndex t{2, -1};
      for (std::size_t i = 0; i < box.size(); i += 3)
        for (std::size_t j = 0; j < box.size(); j += 5) {
          const auto a = box.index(i), b = box.index(j);
          CHECK(ord.compare(a, b) == ord.compare(a + t, b + t));
        }
    }
  }

  TEST_CASE("half-space membership") {
    const auto c = HalfSpace::coordinate(2, 1);
    CHECK(c.contains(LatticeIndex{-5, 0}));
    CHECK_FALSE(c.contains(LatticeIndex{3, -1}));
    const auto o = HalfSpace::ordered(LinearOrder::lex(2));
    CHECK_FALSE(o.contains(LatticeIndex{0, -1}));
    CHECK(o.contains(LatticeIndex{1, -7}));
    CHECK(o.contains(LatticeIndex(2)));
    CHECK(c.contains(LatticeIndex(2)));
    CHECK_THROWS_AS(c.contains(LatticeIndex{1}), DimensionMismatch);
  }

  TEST_CASE("half-space is a semigroup with H and -H covering the lattice") {
    for (const auto& H : {HalfSpace::coordinate(2, 1), HalfSpace::ordered(LinearOrder::lex(2)),
                          HalfSpace::ordered(LinearOrder::graded_lex(2))}) {
      const Box box(2, 3);
      for (std::size_t i = 0; i < box.size(); ++i) {
        const auto a = box.index(i);
        CHECK((H.contains(a) || H.contains(-a)));
        for (std::size_t j = 0; j < box.size(); j += 7) {
          const auto b = box.index(j);
          if (H.contains(a) && H.contains(b)) CHECK(H.contains(a + b));
        }
      }
    }
  }

  TEST_CASE("window enumeration") {
    const auto lex = HalfSpace::ordered(LinearOrder::lex(2)).window(2);
    CHECK(lex.size() == 13);
    CHECK(std::find(lex.begin(), lex.end(), LatticeIndex{0, 2}) != lex.end());
    CHECK(std::find(lex.begin(), lex.end(), LatticeIndex{2, -2}) != lex.end());
    CHECK(std::find(lex.begin(), lex.end(), LatticeIndex{0, -1}) == lex.end());
    CHECK(std::is_sorted(lex.begin(), lex.end(), [](const LatticeIndex& a, const LatticeIndex& b) {
      return LinearOrder::lex(2).compare(a, b) == std::strong_ordering::less;
    }));
    const auto c1 = HalfSpace::coordinate(1, 0).window(3);
    REQUIRE(c1.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(c1[static_cast<std::size_t>(i)] == LatticeIndex{i});
    const auto z = HalfSpace::ordered(LinearOrder::graded_lex(2)).window(0);
    REQUIRE(z.size() == 1);
    CHECK(z.front().is_zero());
  }
}
