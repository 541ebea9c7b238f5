#include "whlattice/symbols.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace whl {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

SymbolNotPositive::SymbolNotPositive(double min_value_, double floor_)
    : std::runtime_error("symbol not positive on the torus grid: min " + fmt_double(min_value_) + " <= floor " +
                         fmt_double(floor_)),
      min_value(min_value_),
      floor(floor_) {}

SymbolCoefficients::SymbolCoefficients(int dim, int radius) : box_(dim, radius), v_(box_.size(), 0.0) {}

SymbolCoefficients SymbolCoefficients::delta(int dim, double value) {
  SymbolCoefficients s(dim, 0);
  s.v_[0] = value;
  return s;
}

double& SymbolCoefficients::ref(const LatticeIndex& k) {
  if (!box_.contains(k)) throw std::out_of_range("index " + k.str() + " outside coefficient box");
  return v_[box_.offset(k)];
}

double SymbolCoefficients::wiener_norm() const noexcept {
  double s = 0;
  for (double x : v_) s += std::abs(x);
  return s;
}

std::vector<double> SymbolCoefficients::tail_profile() const {
  const int n = radius();
  std::vector<double> shell(static_cast<std::size_t>(n) + 1, 0.0);
  for (std::size_t i = 0; i < v_.size(); ++i)
    if (v_[i] != 0.0) shell[static_cast<std::size_t>(box_.index(i).max_abs())] += std::abs(v_[i]);
  std::vector<double> tail(shell.size(), 0.0);
  double acc = 0;
  for (int r = n; r >= 0; --r) {
    tail[static_cast<std::size_t>(r)] = acc;
    acc += shell[static_cast<std::size_t>(r)];
  }
  return tail;
}

SymbolCoefficients SymbolCoefficients::resized(int radius) const {
  SymbolCoefficients out(dim(), radius);
  const Box& ob = out.box_;
  for (std::size_t i = 0; i < ob.size(); ++i) out.v_[i] = (*this)[ob.index(i)];
  return out;
}

SymbolCoefficients SymbolCoefficients::trimmed(double abs_tol) const {
  // per-coefficient rather than tail mass: FFT roundoff spread over a big grid
  // adds up to more than any useful mass tolerance
  int r = 0;
  for (std::size_t i = 0; i < v_.size(); ++i)
    if (std::abs(v_[i]) > abs_tol) r = std::max(r, box_.index(i).max_abs());
  return r == radius() ? *this : resized(r);
}

double SymbolCoefficients::symmetry_defect() const noexcept {
  double m = 0;
  for (std::size_t i = 0; i < v_.size(); ++i) m = std::max(m, std::abs(v_[i] - v_[v_.size() - 1 - i]));
  return m;
}

TorusGrid::TorusGrid(int dim, int points) : dim_(dim), m_(points) {
  if (dim < 1 || dim > kMaxDim) throw DimensionMismatch("grid dimension out of range");
  if (points < 1) throw UndersizedGrid("grid needs at least one point per axis");
  std::size_t n = 1;
  for (int i = 0; i < dim; ++i) n *= static_cast<std::size_t>(points);
  v_.assign(n, {0.0, 0.0});
}

std::size_t TorusGrid::slot(const LatticeIndex& k) const noexcept {
  std::size_t off = 0;
  for (int i = 0; i < dim_; ++i) {
    int r = k[i] % m_;
    if (r < 0) r += m_;
    off = off * static_cast<std::size_t>(m_) + static_cast<std::size_t>(r);
  }
  return off;
}

LatticeIndex TorusGrid::centered(std::size_t i) const noexcept {
  LatticeIndex k(dim_);
  for (int a = dim_ - 1; a >= 0; --a) {
    int r = static_cast<int>(i % static_cast<std::size_t>(m_));
    i /= static_cast<std::size_t>(m_);
    k[a] = 2 * r >= m_ ? r - m_ : r;
  }
  return k;
}

double TorusGrid::min_real() const noexcept {
  double m = INFINITY;
  for (const auto& z : v_) m = std::min(m, z.real());
  return m;
}

double TorusGrid::max_abs_imag() const noexcept {
  double m = 0;
  for (const auto& z : v_) m = std::max(m, std::abs(z.imag()));
  return m;
}

void transform(TorusGrid& g, bool to_values) {
  auto* data = reinterpret_cast<fftw_complex*>(g.values().data());
  fftw_plan plan;
  {
    // estimate plans are deterministic and cheap to keep; one per shape and direction
    static std::map<std::tuple<int, int, bool>, fftw_plan> plans;
    std::lock_guard lock(planner_mutex());
    auto& p = plans[{g.dim(), g.points(), to_values}];
    if (!p) {
      int n[kMaxDim];
      for (int i = 0; i < g.dim(); ++i) n[i] = g.points();
      std::vector<std::complex<double>> scratch(g.size());
      auto* s = reinterpret_cast<fftw_complex*>(scratch.data());
      p = fftw_plan_dft(g.dim(), n, s, s, to_values ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    plan = p;
  }
  fftw_execute_dft(plan, data, data);
  if (!to_values) {
    const double scale = 1.0 / static_cast<double>(g.size());
    for (auto& z : g.values()) z *= scale;
  }
}

TorusGrid coefficients_on_grid(const SymbolCoefficients& s, int M) {
  TorusGrid g(s.dim(), M);
  const Box& b = s.box();
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double c = s.values()[i];
    if (c != 0.0) g[g.slot(b.index(i))] += c;
  }
  return g;
}

FromGrid coefficients_from_values(const TorusGrid& values, int radius) {
  const int M = values.points();
  if (2 * radius + 1 > M) throw UndersizedGrid("radius exceeds (M-1)/2");
  TorusGrid g = values;
  transform(g, false);
  FromGrid out{SymbolCoefficients(g.dim(), radius), 0.0, 0.0};
  double total = 0;
  for (const auto& z : g.values()) total += std::abs(z.real());
  const Box& b = out.coeffs.box();
  double kept = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto& z = g[g.slot(b.index(i))];
    out.coeffs.values()[i] = z.real();
    kept += std::abs(z.real());
    out.max_imag = std::max(out.max_imag, std::abs(z.imag()));
  }
  out.discarded_relative = total > 0 ? std::max(0.0, total - kept) / total : 0.0;
  return out;
}

SymbolCoefficients symbol_from_kernel(const SymbolCoefficients& samples) {
  if (samples.symmetry_defect() > 1e-12 * std::max(1.0, samples.wiener_norm()))
    throw std::invalid_argument("kernel samples are not symmetric");
  return samples;
}

TorusGrid grid_eval(const SymbolCoefficients& s, int M) {
  if (M < 2 * s.radius() + 1)
    throw UndersizedGrid("grid of " + std::to_string(M) + " points cannot resolve radius " + std::to_string(s.radius()));
  TorusGrid g = coefficients_on_grid(s, M);
  transform(g, true);
  return g;
}

FromGrid from_grid(const TorusGrid& g, int radius) { return coefficients_from_values(g, radius); }

void invert_values(TorusGrid& g, double floor) {
  const double m = g.min_real();
  if (!(m > floor)) throw SymbolNotPositive(m, floor);
  for (auto& z : g.values()) z = 1.0 / z.real();
}

void log_values(TorusGrid& g, double floor) {
  const double m = g.min_real();
  if (!(m > floor)) throw SymbolNotPositive(m, floor);
  for (auto& z : g.values()) z = std::log(z.real());
}

SymbolCoefficients reciprocal(const SymbolCoefficients& s, int M, int radius, double floor) {
  TorusGrid g = grid_eval(s, M);
  invert_values(g, floor);
  return coefficients_from_values(g, radius).coeffs;
}

SymbolCoefficients log_symbol(const SymbolCoefficients& s, int M, int radius, double floor) {
  TorusGrid g = grid_eval(s, M);
  log_values(g, floor);
  return coefficients_from_values(g, radius).coeffs;
}

SymbolCoefficients multiply(const SymbolCoefficients& u, const SymbolCoefficients& v) {
  if (u.dim() != v.dim()) throw DimensionMismatch("multiply: dimensions differ");
  SymbolCoefficients w(u.dim(), u.radius() + v.radius());
  const Box &bu = u.box(), &bv = v.box(), &bw = w.box();
  for (std::size_t i = 0; i < bu.size(); ++i) {
    const double a = u.values()[i];
    if (a == 0.0) continue;
    const auto ki = bu.index(i);
    for (std::size_t j = 0; j < bv.size(); ++j) {
      const double b = v.values()[j];
      if (b != 0.0) w.values()[bw.offset(ki + bv.index(j))] += a * b;
    }
  }
  return w;
}

double min_on_torus(const SymbolCoefficients& s, int M) { return grid_eval(s, M).min_real(); }

double wiener_norm(const SymbolCoefficients& s) { return s.wiener_norm(); }

int default_grid_size(int radius) {
  int M = 1;
  while (M < 8 * radius) M *= 2;
  return std::max(M, 2);
}

std::string to_csv(const SymbolCoefficients& s, bool all_entries) {
  std::string out;
  for (int i = 0; i < s.dim(); ++i) out += "k_" + std::to_string(i + 1) + ",";
  out += "value\n";
  const Box& b = s.box();
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double c = s.values()[i];
    if (c == 0.0 && !all_entries) continue;
    const auto k = b.index(i);
    for (int a = 0; a < s.dim(); ++a) out += std::to_string(k[a]) + ",";
    out += fmt_double(c) + "\n";
  }
  return out;
}

SymbolCoefficients from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("coefficient CSV is empty");
  const int d = static_cast<int>(std::count(line.begin(), line.end(), ','));
  if (d < 1 || d > kMaxDim) throw std::invalid_argument("coefficient CSV header has wrong column count");
  std::vector<std::pair<LatticeIndex, double>> rows;
  int radius = 0;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    LatticeIndex k(d);
    for (int a = 0; a < d; ++a) {
      if (!std::getline(ls, cell, ',')) throw std::invalid_argument("short row at line " + std::to_string(lineno));
      k[a] = std::stoi(cell);
    }
    if (!std::getline(ls, cell, ',')) throw std::invalid_argument("missing value at line " + std::to_string(lineno));
    rows.emplace_back(k, std::stod(cell));
    radius = std::max(radius, k.max_abs());
  }
  SymbolCoefficients s(d, radius);
  for (const auto& [k, v] : rows) s.ref(k) = v;
  return s;
}

}  // namespace whl
