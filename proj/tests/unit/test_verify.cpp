#include <cmath>

#include "doctest.h"
#include "whlattice/verify.hpp"

using namespace whl;

namespace {
const double kSqrt3 = std::sqrt(3.0);
}

TEST_SUITE("verify") {
  TEST_CASE("synthetic algebraic fit") {
    std::vector<DecaySample> s;
    for (int k = 1; k <= 60; ++k) s.push_back({double(k), std::pow(1.0 + k, -3.0)});
    const auto f = fit_decay(s, DecayModel::Algebraic, 3.0, 0.05);
    CHECK(f.rate == doctest::Approx(3.0).epsilon(0.003));
    CHECK(f.r_squared > 0.9999);
    CHECK(f.verdict == Verdict::Consistent);
    const auto v = fit_decay(s, DecayModel::Algebraic, 5.0, 0.05);
    CHECK(v.verdict == Verdict::Violated);
  }

  TEST_CASE("synthetic exponential fit") {
    std::vector<DecaySample> s;
    for (int k = 0; k <= 40; ++k) s.push_back({double(k), 2 * std::exp(-0.5 * k)});
    const auto f = fit_decay(s, DecayModel::Exponential);
    CHECK(f.rate == doctest::Approx(0.5).epsilon(0.01));
    CHECK(f.intercept == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    CHECK(f.r_squared <= 1.0);
  }

  TEST_CASE("fits skip the noise floor") {
    std::vector<DecaySample> s;
    for (int k = 0; k < 5; ++k) s.push_back({double(k), 1.0});
    for (int k = 5; k < 50; ++k) s.push_back({double(k), 1e-16});
    CHECK_THROWS_AS(fit_decay(s, DecayModel::Exponential), InsufficientSamples);
  }

  TEST_CASE("ring profile") {
    std::vector<DecaySample> s;
    for (int k = 1; k <= 64; ++k) s.push_back({double(k), 7 * std::pow(1.0 + k, -2.0)});
    const auto p = dyadic_rings(s, 2.0, 2, 64);
    REQUIRE(p.edges.size() == 6);
    for (double v : p.sup) CHECK(v == doctest::Approx(7.0));
    CHECK(p.variation < 1e-12);
    CHECK_THROWS(dyadic_rings(s, 2.0, 0, 10));
  }

  TEST_CASE("finite section oracles") {
    std::vector<LatticeIndex> full, half;
    for (int j = -60; j <= 60; ++j) full.push_back(LatticeIndex{j});
    for (int j = 0; j <= 60; ++j) half.push_back(LatticeIndex{j});
    const FiniteSection a(Kernel::bspline(4), full);
    CHECK(a.solve_delta(LatticeIndex{0}).c[a.position(LatticeIndex{0})] == doctest::Approx(kSqrt3).epsilon(1e-9));
    const FiniteSection b(Kernel::bspline(4), half);
    const auto s = b.solve_delta(LatticeIndex{0});
    CHECK(s.c[0] == doctest::Approx(12 - 6 * kSqrt3).epsilon(1e-9));
    CHECK(s.residual < 1e-10);
    const FiniteSection d(Kernel::delta(1), half);
    const auto dd = d.solve_delta(LatticeIndex{4});
    for (std::size_t i = 0; i < dd.c.size(); ++i) CHECK(dd.c[i] == (i == 4 ? 1.0 : 0.0));
    CHECK_THROWS(a.position(LatticeIndex{100}));
    CHECK_THROWS(FiniteSection(Kernel::bspline(4), full, 10));
  }

  TEST_CASE("finite sections converge as the window grows") {
    SystemOptions o;
    o.grid = 4096;
    o.symbol_radius = 200;
    const auto sc = build_semicardinal(Kernel::gim(1, 1.0, 1.5), HalfSpace::coordinate(1, 0), o);
    double prev = INFINITY;
    for (int n : {10, 20, 40}) {
      std::vector<LatticeIndex> w;
      for (int j = 0; j <= n; ++j) w.push_back(LatticeIndex{j});
      const FiniteSection fs(sc.kernel(), w);
      const double dev = std::abs(fs.solve_delta(LatticeIndex{3}).c[3] - sc.coefficient(LatticeIndex{3}, LatticeIndex{3}));
      CHECK(dev < prev);
      prev = dev;
    }
  }

  TEST_CASE("oracle comparisons") {
    const auto cs = build_cardinal(Kernel::bspline(4));
    CHECK(oracle_compare(cs, 60, 15).deviation < 1e-8);
    const auto sc = build_semicardinal(Kernel::bspline(4), HalfSpace::coordinate(1, 0));
    CHECK(oracle_compare(sc, 60, 15).deviation < 1e-8);
    const auto dsc = build_semicardinal(Kernel::delta(1), HalfSpace::coordinate(1, 0));
    CHECK(oracle_compare(dsc, 20, 5).deviation < 1e-15);
    SystemOptions o;
    o.grid = 128;
    o.symbol_radius = 20;
    const auto g = build_semicardinal(Kernel::gaussian(2, 1.0), HalfSpace::ordered(LinearOrder::lex(2)), o);
    CHECK(oracle_compare(g, 6, 2).deviation < 1e-1);
  }

  TEST_CASE("fundamental identity") {
    SystemOptions o;
    o.grid = 1024;
    const auto k = Kernel::gaussian(1, 1.0);
    const CardinalSystem cs(kernel_symbol(k, o), o);
    const NativeQuadratureSpec q(k);
    const auto r = fundamental_identity_check(q, cs, 0.3);
    CHECK(r.residual < 2e-5);
    CHECK(r.refinement_ok);
    const std::vector<double> x{0.3};
    CHECK(r.quadrature == doctest::Approx(cs.chi(x)).epsilon(2e-5));
    const auto self = native_self_check(NativeQuadratureSpec(Kernel::matern(1, 1.0)),
                                        CardinalSystem(kernel_symbol(Kernel::matern(1, 1.0), o), o));
    CHECK(self.residual < 1e-4);
    CHECK_THROWS_AS(NativeQuadratureSpec(Kernel::gim(1, 1.0, 1.5)), CapabilityError);
    CHECK_THROWS_AS(NativeQuadratureSpec(Kernel::gaussian(2, 1.0)), CapabilityError);
  }

  TEST_CASE("semi-cardinal fundamental identity") {
    SystemOptions o;
    o.grid = 1024;
    const auto k = Kernel::gaussian(1, 1.0);
    const auto sc = build_semicardinal(k, HalfSpace::coordinate(1, 0), o);
    const auto r = fundamental_identity_check(NativeQuadratureSpec(k), sc, LatticeIndex{2}, 1.6);
    CHECK(r.residual < 2e-5);
  }

  TEST_CASE("transform normalization") {
    // phi-hat(0) is the integral of phi
    const NativeQuadratureSpec g(Kernel::gaussian(1, 2.0));
    CHECK(g.transform(0) == doctest::Approx(std::sqrt(std::acos(-1.0) / 2)).epsilon(1e-14));
    const NativeQuadratureSpec m(Kernel::matern(1, 1.0));
    // integral of sqrt(pi/2) e^{-|x|} is sqrt(2 pi)
    CHECK(m.transform(0) == doctest::Approx(std::sqrt(2 * std::acos(-1.0))).epsilon(1e-12));
  }
}
