#include <cmath>

#include "doctest.h"
#include "whlattice/convergence.hpp"

using namespace whl;

namespace {
const double kSqrt3 = std::sqrt(3.0);

struct M4 {
  Kernel k = Kernel::bspline(4);
  SystemOptions o;
  KernelSymbol ks = kernel_symbol(k, o);
  CardinalSystem cs{ks, o};
  SemiCardinalSystem sc{ks, HalfSpace::coordinate(1, 0), o};
  EtaFunction eta{k, sc.factor(), o.tail_tol};
};

const M4& m4() {
  static const M4 s;
  return s;
}

SampleGrid fine_grid() {
  SampleGrid g{1};
  g.step = 0.1;
  return g;
}
}  // namespace

TEST_SUITE("convergence") {
  TEST_CASE("eta at the origin") {
    const std::vector<double> z{0.0};
    const double g0 = 3 - kSqrt3, g1 = -(2 - kSqrt3) * g0;
    CHECK(m4().eta(z) == doctest::Approx(g0 * 2 / 3 + g1 / 6).epsilon(1e-12));
    CHECK(m4().eta(z) == doctest::Approx(0.7886751).epsilon(1e-7));
    for (double x : {-1.3, 0.0, 0.7, 2.5}) {
      const std::vector<double> p{x};
      CHECK(std::abs(m4().eta(p)) <= m4().eta.bound());
    }
  }

  TEST_CASE("delta kernel") {
    const auto k = Kernel::delta(1);
    const SystemOptions o;
    const auto ks = kernel_symbol(k, o);
    const CardinalSystem cs(ks, o);
    const SemiCardinalSystem sc(ks, HalfSpace::coordinate(1, 0), o);
    const EtaFunction e(k, sc.factor());
    const std::vector<double> p{0.3};
    CHECK(e(p) == doctest::Approx(k(p)));
    CHECK(chi_via_eta(e, cs, SampleGrid{1}) < 1e-15);
    CHECK(chij_via_eta(e, sc, LatticeIndex{2}, SampleGrid{1}) < 1e-15);
    CHECK(convergence_gap(e, cs, sc, LatticeIndex{3}, SampleGrid{1}).gap < 1e-15);
  }

  TEST_CASE("eta representations for the cubic spline") {
    CHECK(chi_via_eta(m4().eta, m4().cs, fine_grid()) < 1e-8);
    CHECK(chij_via_eta(m4().eta, m4().sc, LatticeIndex{0}, fine_grid()) < 1e-9);
    CHECK(chij_via_eta(m4().eta, m4().sc, LatticeIndex{5}, fine_grid()) < 1e-8);
    CHECK_THROWS(chij_via_eta(m4().eta, m4().sc, LatticeIndex{-1}, fine_grid()));
  }

  TEST_CASE("sample bank gives the same answers") {
    const SampleBank bank(m4().k, m4().cs.grid());
    const double a = chi_via_eta(m4().eta, m4().cs, fine_grid());
    const double b = chi_via_eta(m4().eta, m4().cs, fine_grid(), &bank);
    CHECK(a == b);
    const std::size_t filled = bank.size();
    CHECK(filled > 0);
    const double c = chij_via_eta(m4().eta, m4().sc, LatticeIndex{5}, fine_grid(), &bank);
    CHECK(c == chij_via_eta(m4().eta, m4().sc, LatticeIndex{5}, fine_grid()));
    CHECK(bank.size() == filled);
    // a bank for another kernel is ignored
    const SampleBank other(Kernel::gaussian(1, 1.0), m4().cs.grid());
    CHECK(chi_via_eta(m4().eta, m4().cs, fine_grid(), &other) == a);
  }

  TEST_CASE("gap decreases and stays under the bound") {
    std::vector<LatticeIndex> js;
    for (int j : {0, 2, 5, 10, 20}) js.push_back(LatticeIndex{j});
    const auto r = convergence_gap(m4().eta, m4().cs, m4().sc, js, SampleGrid{1});
    for (std::size_t i = 0; i < r.size(); ++i) {
      CHECK(r[i].gap <= r[i].bound + 1e-14);
      if (i > 0) CHECK(r[i].bound < r[i - 1].bound);
      if (i > 0 && r[i - 1].gap > 1e-14) CHECK(r[i].gap < r[i - 1].gap);
    }
    CHECK(r.back().gap < 1e-9);
  }

  TEST_CASE("coordinate gap depends only on the last coordinate") {
    SystemOptions o;
    o.grid = 128;
    o.symbol_radius = 20;
    const auto k = Kernel::gaussian(2, 1.0);
    const auto ks = kernel_symbol(k, o);
    const CardinalSystem cs(ks, o);
    const SemiCardinalSystem sc(ks, HalfSpace::coordinate(2, 1), o);
    const EtaFunction e(k, sc.factor());
    SampleGrid g{2};
    g.step = 0.5;
    const auto a = convergence_gap(e, cs, sc, LatticeIndex{0, 1}, g);
    const auto b = convergence_gap(e, cs, sc, LatticeIndex{4, 1}, g);
    CHECK(std::abs(a.gap - b.gap) < 1e-10);
  }

  TEST_CASE("exhausting sequence") {
    CHECK(exhausting_element(HalfSpace::coordinate(2, 1), 3) == LatticeIndex{0, 3});
    const auto lex = HalfSpace::ordered(LinearOrder::lex(2));
    CHECK(exhausting_element(lex, 0).is_zero());
    CHECK(exhausting_element(lex, 3) == LatticeIndex{3, 0});
    const auto gl = HalfSpace::ordered(LinearOrder::graded_lex(2));
    CHECK(exhausting_element(gl, 2) == LatticeIndex{0, 2});
    CHECK(exhausting_element(gl, 1) == LatticeIndex{0, 1});
    CHECK_THROWS(exhausting_element(lex, -1));
  }

  TEST_CASE("sample grid") {
    const SampleGrid g{2};
    CHECK(g.per_axis() == 25);
    CHECK(g.size() == 625);
    const auto p = g.points();
    CHECK(p.size() == 1250);
    CHECK(p[0] == -3.0);
  }
}
