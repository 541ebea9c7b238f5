#include "whlattice/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace whl {

std::size_t SampleGrid::per_axis() const {
  if (!(step > 0) || hi < lo) throw std::invalid_argument("sample grid needs step > 0 and hi >= lo");
  return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

std::size_t SampleGrid::size() const {
  std::size_t n = 1;
  for (int a = 0; a < dim; ++a) n *= per_axis();
  return n;
}

std::vector<double> SampleGrid::points() const {
  const std::size_t q = per_axis(), n = size();
  const auto d = static_cast<std::size_t>(dim);
  std::vector<double> out(n * d);
  for (std::size_t p = 0; p < n; ++p) {
    std::size_t rem = p;
    for (std::size_t a = d; a-- > 0;) {
      out[p * d + a] = lo + step * static_cast<double>(rem % q);
      rem /= q;
    }
  }
  return out;
}

EtaFunction::EtaFunction(const Kernel& k, const WienerHopfFactor& f, double tol)
    : factor_(f), eta_(k, f.gamma, tol) {}

double EtaFunction::bound() const {
  const Kernel& k = kernel();
  return factor_.gamma.wiener_norm() * periodized_sup(k, 17, periodized_radius(k));
}

namespace {

// grid points split by fractional offset: x = x0 + n with n integer
struct OffsetClass {
  std::vector<double> x0;
  std::vector<LatticeIndex> shifts;
};

std::vector<OffsetClass> offset_classes(const SampleGrid& grid) {
  const int d = grid.dim;
  const auto pts = grid.points();
  std::map<std::vector<long long>, std::size_t> index;
  std::vector<OffsetClass> out;
  for (std::size_t p = 0; p < grid.size(); ++p) {
    std::vector<double> x0(static_cast<std::size_t>(d));
    std::vector<long long> key(static_cast<std::size_t>(d));
    LatticeIndex n(d);
    for (int a = 0; a < d; ++a) {
      const double x = pts[p * d + a];
      const double fl = std::floor(x + 1e-12);
      n[a] = static_cast<int>(fl);
      x0[a] = std::max(0.0, x - fl);
      key[a] = std::llround(x0[a] * 1e9);
    }
    auto [it, fresh] = index.try_emplace(key, out.size());
    if (fresh) out.push_back({std::move(x0), {}});
    out[it->second].shifts.push_back(n);
  }
  return out;
}

struct Term {
  LatticeIndex k;
  double v;
};

std::vector<Term> nonzero_terms(const SymbolCoefficients& c) {
  std::vector<Term> out;
  const Box& b = c.box();
  for (std::size_t i = 0; i < b.size(); ++i)
    if (c.values()[i] != 0.0) out.push_back({b.index(i), c.values()[i]});
  return out;
}

int table_grid(const EtaFunction& e, const CardinalSystem* cs) {
  int M = e.factor().grid;
  if (cs) M = std::max(M, cs->grid());
  return M;
}

void require_full_eval(const Kernel& k) {
  if (!k.full_eval()) throw CapabilityError(k.name() + " cannot be evaluated off the lattice");
}

// bank samples when the bank matches, fresh ones otherwise
const TorusGrid& offset_samples(const Kernel& k, std::span<const double> x0, int M, const SampleBank* bank,
                                TorusGrid& local) {
  if (bank && bank->points() == M && bank->kernel().describe() == k.describe())
    return bank->get(x0);
  local = shifted_samples(k, x0, M);
  return local;
}

}  // namespace

double chi_via_eta(const EtaFunction& e, const CardinalSystem& cs, const SampleGrid& grid, const SampleBank* bank) {
  const Kernel& k = e.kernel();
  require_full_eval(k);
  const int M = table_grid(e, &cs);
  const ShiftedTable eta(k, e.factor().gamma, M), chi(k, cs.omega(), M);
  const auto gam = nonzero_terms(e.factor().gamma);
  double res = 0;
  for (const auto& cls : offset_classes(grid)) {
    TorusGrid local(1, 1);
    const TorusGrid& s = offset_samples(k, cls.x0, M, bank, local);
    const auto se = eta.apply(s), sc = chi.apply(s);
    for (const auto& n : cls.shifts) {
      double rep = 0;
      for (const auto& t : gam) rep += t.v * se[eta.slot(n + t.k)];
      res = std::max(res, std::abs(sc[chi.slot(n)] - rep));
    }
  }
  return res;
}

double chij_via_eta(const EtaFunction& e, const SemiCardinalSystem& sc, const LatticeIndex& j,
                    const SampleGrid& grid, const SampleBank* bank) {
  const Kernel& k = e.kernel();
  require_full_eval(k);
  const HalfSpace& H = e.factor().halfspace;
  if (!H.contains(j)) throw std::invalid_argument("index " + j.str() + " is not in the half-space");
  const int M = table_grid(e, nullptr);
  const ShiftedTable eta(k, e.factor().gamma, M), chij(k, sc.column(j), M);
  // gamma_m eta(x - (j - m)) for m with j - m in H
  std::vector<Term> terms;
  for (const auto& t : nonzero_terms(e.factor().gamma))
    if (H.contains_unchecked(j - t.k)) terms.push_back({j - t.k, t.v});
  double res = 0;
  // sample grid is taken around j
  for (const auto& cls : offset_classes(grid)) {
    TorusGrid local(1, 1);
    const TorusGrid& s = offset_samples(k, cls.x0, M, bank, local);
    const auto se = eta.apply(s), sj = chij.apply(s);
    for (const auto& n0 : cls.shifts) {
      const LatticeIndex n = n0 + j;
      double rep = 0;
      for (const auto& t : terms) rep += t.v * se[eta.slot(n - t.k)];
      res = std::max(res, std::abs(sj[chij.slot(n)] - rep));
    }
  }
  return res;
}

double gamma_tail(const WienerHopfFactor& f, const LatticeIndex& j) {
  double tail = 0;
  for (const auto& t : nonzero_terms(f.gamma))
    if (!f.halfspace.contains_unchecked(j - t.k)) tail += std::abs(t.v);
  return tail;
}

std::vector<GapReport> convergence_gap(const EtaFunction& e, const CardinalSystem& cs, const SemiCardinalSystem& sc,
                                       std::span<const LatticeIndex> js, const SampleGrid& grid,
                                       const SampleBank* bank) {
  const Kernel& k = e.kernel();
  require_full_eval(k);
  const int M = table_grid(e, &cs);
  const ShiftedTable eta(k, e.factor().gamma, M), chi(k, cs.omega(), M);
  std::vector<ShiftedTable> cols;
  std::vector<GapReport> out;
  for (const auto& j : js) {
    cols.emplace_back(k, sc.column(j), M);
    out.push_back({j, 0, 0, 0, gamma_tail(e.factor(), j)});
  }
  // gap(x) = sum_{m in T_j} gamma_m eta(x + m), and x + m stays in the offset class of x,
  // so the sup of |eta| over these tables bounds the gap at every grid point
  double sup_eta = 0;
  for (const auto& cls : offset_classes(grid)) {
    TorusGrid local(1, 1);
    const TorusGrid& s = offset_samples(k, cls.x0, M, bank, local);
    for (double v : eta.apply(s)) sup_eta = std::max(sup_eta, std::abs(v));
    const auto sx = chi.apply(s);
    for (std::size_t q = 0; q < js.size(); ++q) {
      const auto sj = cols[q].apply(s);
      for (const auto& n : cls.shifts)
        out[q].gap = std::max(out[q].gap, std::abs(sx[chi.slot(n)] - sj[chi.slot(n + js[q])]));
    }
  }
  for (auto& r : out) {
    r.sup_eta = sup_eta;
    r.bound = sup_eta * r.gamma_tail;
  }
  return out;
}

GapReport convergence_gap(const EtaFunction& e, const CardinalSystem& cs, const SemiCardinalSystem& sc,
                          const LatticeIndex& j, const SampleGrid& grid, const SampleBank* bank) {
  return convergence_gap(e, cs, sc, std::span<const LatticeIndex>(&j, 1), grid, bank).front();
}

LatticeIndex exhausting_element(const HalfSpace& H, int n) {
  if (n < 0) throw std::invalid_argument("exhausting sequence index must be >= 0");
  if (!H.is_ordered()) return LatticeIndex::unit(H.dim(), H.axis(), n);
  const LinearOrder& ord = H.order();
  LatticeIndex best(H.dim());
  for (const auto& k : H.window(n))
    if (k.norm() <= n + 1e-12 && ord.compare(k, best) == std::strong_ordering::greater) best = k;
  return best;
}

}  // namespace whl
