#include "whlattice/semicardinal.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace whl {

FactorOptions factor_options(const SystemOptions& opt) {
  FactorOptions f;
  f.positivity_floor = opt.positivity_floor;
  f.residual_tol = opt.residual_tol;
  f.leak_tol = opt.leak_tol;
  f.trim_tol = opt.trim_tol;
  return f;
}

SemiCardinalSystem::SemiCardinalSystem(const KernelSymbol& ks, const HalfSpace& H, const SystemOptions& opt)
    : SemiCardinalSystem(ks, factorize(ks.values, H, factor_options(opt)), opt) {}

SemiCardinalSystem::SemiCardinalSystem(const KernelSymbol& ks, WienerHopfFactor factor, const SystemOptions& opt)
    : kernel_(ks.kernel), sigma_(ks.sigma), factor_(std::move(factor)), tail_tol_(opt.tail_tol) {
  if (factor_.halfspace.dim() != kernel_.dim()) throw DimensionMismatch("half-space and kernel dimensions differ");
  ghat_ = coefficients_on_grid(factor_.gamma, factor_.grid);
  transform(ghat_, false);
}

SemiCardinalSystem build_semicardinal(const Kernel& k, const HalfSpace& H, const SystemOptions& opt) {
  return SemiCardinalSystem(kernel_symbol(k, opt), H, opt);
}

void SemiCardinalSystem::require_in_h(const LatticeIndex& k) const {
  if (!halfspace().contains(k)) throw std::invalid_argument("index " + k.str() + " is not in the half-space");
}

double SemiCardinalSystem::coefficient(const LatticeIndex& k, const LatticeIndex& j) const {
  require_in_h(k);
  require_in_h(j);
  double out = 0;
  gram_entries(factor_.gamma, halfspace(), std::span<const LatticeIndex>(&k, 1), std::span<const LatticeIndex>(&j, 1),
               std::span<double>(&out, 1), Exec::Serial);
  return out;
}

std::vector<double> SemiCardinalSystem::coefficients(std::span<const LatticeIndex> ks, std::span<const LatticeIndex> js,
                                                     Exec exec) const {
  for (const auto& k : ks) require_in_h(k);
  for (const auto& j : js) require_in_h(j);
  std::vector<double> out(ks.size());
  gram_entries(factor_.gamma, halfspace(), ks, js, out, exec);
  return out;
}

SymbolCoefficients SemiCardinalSystem::column(const LatticeIndex& j) const {
  return std::move(columns(std::span<const LatticeIndex>(&j, 1)).front());
}

// Two real columns share one complex transform: gamma is real, so the real and
// imaginary parts of the product stay apart.
std::vector<SymbolCoefficients> SemiCardinalSystem::columns(std::span<const LatticeIndex> js) const {
  for (const auto& j : js) require_in_h(j);
  const int M = factor_.grid;
  const int d = kernel_.dim();
  const auto& g = factor_.gamma;
  const Box& gb = g.box();
  const HalfSpace& H = halfspace();

  // nonzero gamma entries with their negated index reduced mod M per axis
  struct Entry {
    LatticeIndex k;
    int neg[kMaxDim];
    double v;
  };
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < gb.size(); ++i) {
    const double v = g.values()[i];
    if (v == 0.0) continue;
    Entry e{gb.index(i), {}, v};
    for (int a = 0; a < d; ++a) e.neg[a] = ((-e.k[a]) % M + M) % M;
    entries.push_back(e);
  }
  // output positions of H in a box, keyed by radius
  std::map<int, std::vector<std::pair<std::size_t, std::size_t>>> reads;
  auto read_list = [&](int R) -> const std::vector<std::pair<std::size_t, std::size_t>>& {
    auto [it, fresh] = reads.try_emplace(R);
    if (fresh) {
      const Box cb(d, R);
      for (std::size_t i = 0; i < cb.size(); ++i) {
        const LatticeIndex k = cb.index(i);
        if (!H.contains_unchecked(k)) continue;
        std::size_t off = 0;
        for (int a = 0; a < d; ++a) off = off * std::size_t(M) + std::size_t((k[a] % M + M) % M);
        it->second.emplace_back(i, off);
      }
    }
    return it->second;
  };

  std::vector<SymbolCoefficients> out;
  out.reserve(js.size());
  TorusGrid t(d, M);
  const double n = static_cast<double>(t.size());
  for (std::size_t p = 0; p < js.size(); p += 2) {
    const std::size_t np = std::min<std::size_t>(2, js.size() - p);
    std::fill(t.values().begin(), t.values().end(), std::complex<double>{});
    // twisted truncation: t_m = gamma_{j-m} for m in H
    for (std::size_t q = 0; q < np; ++q) {
      const LatticeIndex& j = js[p + q];
      int jm[kMaxDim];
      for (int a = 0; a < d; ++a) jm[a] = (j[a] % M + M) % M;
      const bool coord = !H.is_ordered();
      const int ax = H.axis();
      for (const auto& e : entries) {
        if (coord) {
          if (j[ax] < e.k[ax]) continue;
        } else if (!H.contains_unchecked(j - e.k)) {
          continue;
        }
        std::size_t off = 0;
        for (int a = 0; a < d; ++a) {
          int r = jm[a] + e.neg[a];
          if (r >= M) r -= M;
          off = off * std::size_t(M) + std::size_t(r);
        }
        if (q) t[off] += std::complex<double>(0, e.v);
        else t[off] += e.v;
      }
    }
    transform(t, false);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] *= ghat_[i] * n;
    transform(t, true);
    for (std::size_t q = 0; q < np; ++q) {
      const int R = std::min((M - 1) / 2, js[p + q].max_abs() + g.radius());
      SymbolCoefficients col(d, R);
      for (const auto& [i, off] : read_list(R)) col.values()[i] = q ? t[off].imag() : t[off].real();
      out.push_back(std::move(col));
    }
  }
  return out;
}

KernelExpansion SemiCardinalSystem::lagrange(const LatticeIndex& j) const {
  return KernelExpansion(kernel_, column(j), tail_tol_);
}

SymbolCoefficients SemiCardinalSystem::data_coefficients(const DataWindow& data) const {
  data.check();
  if (data.extension != Extension::Zero) throw std::invalid_argument("semi-cardinal data uses zero extension");
  if (data.dim() != kernel_.dim()) throw DimensionMismatch("data dimension does not match the kernel");
  const int M = factor_.grid;
  if (2 * data.radius() + 1 > M) throw std::invalid_argument("data window does not fit on the torus grid");
  TorusGrid y(kernel_.dim(), M);
  for (std::size_t i = 0; i < data.points.size(); ++i) {
    require_in_h(data.points[i]);
    y[y.slot(data.points[i])] += data.values[i];
  }
  const double n = static_cast<double>(y.size());
  // u_l = sum_k gamma_{k-l} y_k, kept on H
  transform(y, false);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] *= std::conj(ghat_[i]) * n;
  transform(y, true);
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = {y[i].real(), 0.0};
    if (!halfspace().contains_unchecked(y.centered(i))) y[i] = 0.0;
  }
  // c_k = sum_l gamma_{k-l} u_l
  transform(y, false);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] *= ghat_[i] * n;
  transform(y, true);
  SymbolCoefficients c(kernel_.dim(), (M - 1) / 2);
  const Box& b = c.box();
  for (std::size_t i = 0; i < b.size(); ++i) {
    const LatticeIndex k = b.index(i);
    if (halfspace().contains_unchecked(k)) c.values()[i] = y[y.slot(k)].real();
  }
  return c.trimmed(1e-16 * c.wiener_norm());
}

InterpolationValue SemiCardinalSystem::interpolate(const DataWindow& data, std::span<const double> x) const {
  InterpolationValue v;
  v.coefficient = KernelExpansion(kernel_, data_coefficients(data), tail_tol_)(x);
  for (std::size_t i = 0; i < data.points.size(); ++i)
    if (data.values[i] != 0.0) v.lagrange += data.values[i] * lagrange(data.points[i])(x);
  return v;
}

double SemiCardinalSystem::schur_norm(std::span<const LatticeIndex> probes) const {
  double best = 0;
  for (const auto& j : probes) best = std::max(best, column(j).wiener_norm());
  return best;
}

CholeskyCheck SemiCardinalSystem::cholesky_residual(int n, int buffer, std::size_t cap) const {
  if (n < 0) throw std::invalid_argument("window radius must be >= 0");
  if (buffer < 0) buffer = n / 4;
  const auto W = halfspace().window(n);
  if (W.size() > cap)
    throw WindowTooLarge("window of " + std::to_string(W.size()) + " unknowns exceeds the dense cap " +
                         std::to_string(cap));
  CholeskyCheck out;
  out.unknowns = W.size();
  std::vector<std::size_t> inner;
  for (std::size_t i = 0; i < W.size(); ++i)
    if (W[i].max_abs() <= n - buffer) inner.push_back(i);
  const std::size_t nw = W.size();

  // columns of A for interior j, restricted to the window rows
  std::vector<double> A(nw * inner.size());
  const double direct_cost = std::pow(2.0 * working_radius() + 1, kernel_.dim()) * double(nw) * double(inner.size());
  if (direct_cost < 2e8) {
    std::vector<LatticeIndex> ks, js;
    for (std::size_t c = 0; c < inner.size(); ++c)
      for (std::size_t r = 0; r < nw; ++r) {
        ks.push_back(W[r]);
        js.push_back(W[inner[c]]);
      }
    gram_entries(factor_.gamma, halfspace(), ks, js, A, Exec::Parallel);
  } else {
    // chunks keep memory bounded; a column can span the whole grid
    for (std::size_t c = 0; c < inner.size(); c += kColumnChunk) {
      std::vector<LatticeIndex> js;
      for (std::size_t q = c; q < std::min(inner.size(), c + kColumnChunk); ++q) js.push_back(W[inner[q]]);
      const auto cols = columns(js);
      for (std::size_t q = 0; q < cols.size(); ++q)
        for (std::size_t r = 0; r < nw; ++r) A[(c + q) * nw + r] = cols[q][W[r]];
    }
  }
  std::vector<LatticeIndex> rows;
  for (std::size_t i : inner) rows.push_back(W[i]);
  std::vector<double> T(rows.size() * nw);  // interior rows x window, column-major
  toeplitz_block(kernel_, rows, W, T.data(), Exec::Parallel);
  for (std::size_t c = 0; c < inner.size(); ++c)
    for (std::size_t r = 0; r < rows.size(); ++r) {
      double acc = 0;
      for (std::size_t k = 0; k < nw; ++k) acc += T[k * rows.size() + r] * A[c * nw + k];
      const double target = (r == c) ? 1.0 : 0.0;
      out.residual = std::max(out.residual, std::abs(acc - target));
    }

  if (halfspace().is_ordered()) {
    const auto& ord = halfspace().order();
    for (const auto& k : W)
      for (const auto& j : W)
        if (ord.compare(k, j) == std::strong_ordering::less)
          out.triangular_violation = std::max(out.triangular_violation, std::abs(factor_.gamma[k - j]));
    out.triangular = out.triangular_violation == 0.0;
  }
  return out;
}

std::vector<LatticeIndex> SemiCardinalSystem::probe_set() const {
  const int d = kernel_.dim();
  const HalfSpace& H = halfspace();
  std::vector<LatticeIndex> out;
  if (!H.is_ordered()) {
    for (int jd : {0, 1, 5, 20}) out.push_back(LatticeIndex::unit(d, H.axis(), jd));
    return out;
  }
  const auto w = H.window(2);  // sorted: 0 comes first
  for (std::size_t i = 0; i < std::min<std::size_t>(4, w.size()); ++i) out.push_back(w[i]);
  for (int r : {5, 10})
    for (int a = 0; a < d; ++a) {
      auto e = LatticeIndex::unit(d, a, r);
      out.push_back(H.contains_unchecked(e) ? e : -e);
    }
  return out;
}

}  // namespace whl
