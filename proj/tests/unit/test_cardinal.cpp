#include <cmath>

#include "doctest.h"
#include "whlattice/cardinal.hpp"

using namespace whl;

namespace {
const double kSqrt3 = std::sqrt(3.0);

DataWindow window_1d(int lo, int hi, double (*f)(int)) {
  DataWindow w;
  for (int j = lo; j <= hi; ++j) {
    w.points.push_back(LatticeIndex{j});
    w.values.push_back(f(j));
  }
  return w;
}
}  // namespace

TEST_SUITE("cardinal") {
  TEST_CASE("delta kernel is its own Lagrange function") {
    const auto cs = build_cardinal(Kernel::delta(1));
    CHECK(cs.coefficient(LatticeIndex{0}) == doctest::Approx(1.0));
    CHECK(cs.omega_wiener() == doctest::Approx(1.0));
    for (double x : {0.0, 0.3, -0.8, 2.2}) {
      const std::vector<double> p{x};
      CHECK(cs.chi(p) == doctest::Approx(std::max(0.0, 1 - std::abs(x))));
    }
    CHECK(cs.lebesgue().estimate == doctest::Approx(1.0));
  }

  TEST_CASE("cubic spline coefficients") {
    const auto cs = build_cardinal(Kernel::bspline(4));
    CHECK(cs.coefficient(LatticeIndex{0}) == doctest::Approx(kSqrt3).epsilon(1e-12));
    CHECK(cs.coefficient(LatticeIndex{1}) == doctest::Approx(kSqrt3 * (kSqrt3 - 2)).epsilon(1e-12));
    CHECK(cs.coefficient(LatticeIndex{-3}) == doctest::Approx(cs.coefficient(LatticeIndex{3})));
    CHECK(cs.omega_wiener() == doctest::Approx(3.0).epsilon(1e-8));
    const std::vector<double> a{0.5}, b{-0.5};
    CHECK(cs.chi(a) == doctest::Approx(cs.chi(b)).epsilon(1e-14));
    const auto l = cs.lebesgue();
    CHECK(l.bound == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(l.estimate <= l.bound * (1 + 1e-12));
    CHECK(l.estimate > 1.0);
  }

  TEST_CASE("delta conditions") {
    for (const auto& k : {Kernel::gaussian(1, 1.0), Kernel::matern(1, 1.5), Kernel::gim(1, 1.0, 1.5)}) {
      SystemOptions o;
      o.grid = 1024;
      const CardinalSystem cs(kernel_symbol(k, o), o);
      for (int j = -10; j <= 10; ++j) CHECK(std::abs(cs.chi_at(LatticeIndex{j}) - (j == 0 ? 1.0 : 0.0)) < 1e-8);
    }
  }

  TEST_CASE("gaussian coefficients alternate in sign") {
    const auto cs = build_cardinal(Kernel::gaussian(1, 1.0));
    for (int k = 0; k < 10; ++k) CHECK(cs.coefficient(LatticeIndex{k}) * cs.coefficient(LatticeIndex{k + 1}) < 0);
    const auto l = cs.lebesgue();
    CHECK(l.estimate <= l.bound);
  }

  TEST_CASE("interpolation routes agree") {
    const auto cs = build_cardinal(Kernel::gaussian(1, 1.0));
    auto w = window_1d(-30, 30, [](int j) { return std::sin(0.3 * j) + 0.1 * j; });
    for (double x : {0.0, 0.25, 3.7, -11.4}) {
      const std::vector<double> p{x};
      const auto v = cs.interpolate(w, p);
      CHECK(v.lagrange == doctest::Approx(v.coefficient).epsilon(1e-9));
    }
    for (int j = -20; j <= 20; j += 5) {
      const std::vector<double> p{double(j)};
      CHECK(cs.interpolate(w, p).lagrange == doctest::Approx(std::sin(0.3 * j) + 0.1 * j).epsilon(1e-8));
    }
  }

  TEST_CASE("constant data is reproduced at interior lattice points") {
    const auto cs = build_cardinal(Kernel::gaussian(1, 1.0));
    const auto w = window_1d(-60, 60, [](int) { return 1.0; });
    for (double x : {0.0, 3.0, -17.0}) {
      const std::vector<double> p{x};
      CHECK(cs.interpolate(w, p).coefficient == doctest::Approx(1.0).epsilon(1e-8));
    }
  }

  TEST_CASE("kernel samples reproduce the kernel") {
    const auto k = Kernel::gaussian(1, 1.0);
    const auto cs = build_cardinal(k);
    DataWindow w;
    for (int j = -12; j <= 12; ++j) {
      w.points.push_back(LatticeIndex{j});
      w.values.push_back(k.at(LatticeIndex{j}));
    }
    for (double x : {0.0, 0.4, 1.3}) {
      const std::vector<double> p{x};
      CHECK(cs.interpolate(w, p).coefficient == doctest::Approx(k(p)).epsilon(1e-9));
    }
  }

  TEST_CASE("unit impulse interpolates to chi") {
    const auto cs = build_cardinal(Kernel::gim(1, 1.0, 1.5));
    DataWindow w;
    w.points = {LatticeIndex{0}};
    w.values = {1.0};
    for (double x : {0.2, 1.5}) {
      const std::vector<double> p{x};
      CHECK(cs.interpolate(w, p).lagrange == doctest::Approx(cs.chi(p)).epsilon(1e-12));
    }
  }

  TEST_CASE("periodic extension") {
    const auto cs = build_cardinal(Kernel::gaussian(1, 1.0));
    DataWindow w;
    for (int j = 0; j < 4; ++j) {
      w.points.push_back(LatticeIndex{j});
      w.values.push_back(j % 2 ? -1.0 : 1.0);
    }
    w.extension = Extension::Periodic;
    w.periods = 20;
    const std::vector<double> p{1.0};
    CHECK(cs.interpolate(w, p).coefficient == doctest::Approx(-1.0).epsilon(1e-8));
  }

  TEST_CASE("box spline lattice evaluation") {
    SystemOptions o;
    o.grid = 96;
    o.symbol_radius = 8;
    const CardinalSystem cs(kernel_symbol(Kernel::box_spline_222(), o), o);
    CHECK(cs.min_symbol() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(cs.chi_at(LatticeIndex{0, 0}) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(cs.chi_at(LatticeIndex{1, 1})) < 1e-8);
    const std::vector<double> p{0.5, 0.5};
    CHECK_THROWS_AS(cs.chi(p), CapabilityError);
    CHECK_THROWS_AS(cs.lebesgue(), CapabilityError);
  }
}
