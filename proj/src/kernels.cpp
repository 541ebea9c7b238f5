#include "whlattice/kernels.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>

#include "whlattice/parallel.hpp"

namespace whl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double norm2(const double* x, int d) {
  double s = 0;
  for (int i = 0; i < d; ++i) s += x[i] * x[i];
  return s;
}

bool is_half_integer(double nu) {
  const double t = 2.0 * nu;
  return std::abs(t - std::round(t)) < 1e-14 && static_cast<long>(std::round(t)) % 2 != 0;
}

std::vector<std::pair<LatticeIndex, double>> make_stencil(int d, int m) {
  std::map<std::vector<int>, double> cur{{std::vector<int>(static_cast<std::size_t>(d), 0), 1.0}};
  for (int step = 0; step < m; ++step) {
    std::map<std::vector<int>, double> next;
    for (const auto& [s, w] : cur)
      for (int i = 0; i < d; ++i)
        for (int t = -1; t <= 1; ++t) {
          auto u = s;
          u[static_cast<std::size_t>(i)] += t;
          next[u] += w * (t == 0 ? -2.0 : 1.0);
        }
    cur = std::move(next);
  }
  std::vector<std::pair<LatticeIndex, double>> out;
  for (const auto& [s, w] : cur)
    if (w != 0.0) out.emplace_back(LatticeIndex::from(s), w);
  return out;
}

std::size_t shell_count(int d, int r) {
  if (r == 0) return 1;
  auto p = [d](long s) {
    long v = 1;
    for (int i = 0; i < d; ++i) v *= s;
    return v;
  };
  return static_cast<std::size_t>(p(2L * r + 1) - p(2L * r - 1));
}

}  // namespace

// ---- special functions ----------------------------------------------------

double bessel_k(double nu, double x) {
  if (!(x > 0)) throw DomainError("bessel_k needs x > 0");
  nu = std::abs(nu);
  if (x > 700) return 0.0;
  if (is_half_integer(nu)) {
    // K_{n+1/2}(x) = sqrt(pi/(2x)) e^-x sum_k (n+k)!/(k!(n-k)!) (2x)^-k
    const int n = static_cast<int>(std::floor(nu));
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= n; ++k) {
      term *= double(n + k) * double(n - k + 1) / (double(k) * 2.0 * x);
      sum += term;
    }
    return std::sqrt(std::numbers::pi / (2 * x)) * std::exp(-x) * sum;
  }
  return boost::math::cyl_bessel_k(nu, x);
}

double bspline_eval(int n, double x) {
  if (n < 1) throw std::invalid_argument("B-spline order must be >= 1");
  const double t = x + 0.5 * n;
  if (t <= 0.0 || t >= n) return 0.0;
  // Cox-de Boor on integer knots 0..n
  std::vector<double> b(static_cast<std::size_t>(n), 0.0);
  const int cell = std::min(static_cast<int>(std::floor(t)), n - 1);
  b[static_cast<std::size_t>(cell)] = 1.0;
  for (int k = 2; k <= n; ++k)
    for (int i = 0; i + k <= n; ++i)
      b[static_cast<std::size_t>(i)] =
          ((t - i) * b[static_cast<std::size_t>(i)] + (i + k - t) * b[static_cast<std::size_t>(i + 1)]) / (k - 1);
  return b[0];
}

// log(1 + u) = 2 atanh(z), z = u / (2 + u); the odd series is short for the
// far-field range and much cheaper than long double log1p
static long double log1p_near(long double u) {
  const long double z = u / (2 + u);
  if (std::abs(z) > 0.25L) return std::log1p(u);
  const long double z2 = z * z;
  long double sum = 0;
  for (int k = 31; k >= 1; k -= 2) sum = sum * z2 + 1.0L / k;
  return 2 * z * sum;
}

double polyharmonic_constant(int m, int d) {
  const double pi = std::numbers::pi;
  const double sgn_m = (m % 2 == 0) ? 1.0 : -1.0;
  if (d % 2 == 1)
    return sgn_m * std::tgamma(0.5 * d - m) / (std::pow(4.0, m) * std::pow(pi, 0.5 * d) * std::tgamma(m));
  const double s = ((d / 2 + 1) % 2 == 0) ? 1.0 : -1.0;
  return s / (std::pow(2.0, 2 * m - 1) * std::pow(pi, 0.5 * d) * std::tgamma(m) * std::tgamma(m - d / 2 + 1));
}

double polyharmonic_phi(int m, int d, double r) {
  if (r == 0.0) return 0.0;
  const double c = polyharmonic_constant(m, d);
  const double v = std::pow(r, 2 * m - d);
  return d % 2 == 0 ? c * v * std::log(r) : c * v;
}

double polyharmonic_psi(int m, int d, std::span<const double> x) {
  return Kernel::polyharmonic(d, m)(x);
}

// ---- Kernel ---------------------------------------------------------------

Kernel Kernel::delta(int dim) {
  Kernel k(family::Delta{}, dim);
  k.finish();
  return k;
}

Kernel Kernel::gaussian(int dim, double c) {
  if (!(c > 0)) throw std::invalid_argument("gaussian needs c > 0");
  Kernel k(family::Gaussian{c}, dim);
  k.finish();
  return k;
}

Kernel Kernel::matern(int dim, double m) {
  if (!(m > 0.5 * dim)) throw std::invalid_argument("matern needs m > d/2");
  Kernel k(family::Matern{m}, dim);
  k.finish();
  return k;
}

Kernel Kernel::gim(int dim, double c, double m) {
  if (!(c > 0)) throw std::invalid_argument("gim needs c > 0");
  if (!(2 * m > dim)) throw std::invalid_argument("gim needs 2m > d");
  Kernel k(family::Gim{c, m}, dim);
  k.finish();
  return k;
}

Kernel Kernel::bspline(int n) {
  if (n < 2) throw std::invalid_argument("bspline needs n >= 2");
  Kernel k(family::BSpline{n}, 1);
  k.finish();
  return k;
}

Kernel Kernel::box_spline_222() {
  Kernel k(family::BoxSpline222{}, 2);
  k.finish();
  return k;
}

Kernel Kernel::polyharmonic(int dim, int m) {
  if (!(2 * m > dim)) throw std::invalid_argument("polyharmonic needs 2m > d");
  Kernel k(family::Polyharmonic{m}, dim);
  k.finish();
  return k;
}

void Kernel::finish() {
  if (dim_ < 1 || dim_ > kMaxDim) throw DimensionMismatch("kernel dimension out of range");
  const double d = dim_;
  std::visit(overloaded{
                 [&](const family::Delta&) {
                   support_ = 1.0;
                   decay_ = Exponential{1.0, std::exp(d)};
                   sup_ = 1.0;
                 },
                 [&](const family::Gaussian& g) {
                   decay_ = Exponential{1.0, std::exp(d / (4 * g.c))};
                   sup_ = 1.0;
                 },
                 [&](const family::Matern& f) {
                   nu_ = f.m - 0.5 * d;
                   phi0_ = std::pow(2.0, nu_ - 1) * std::tgamma(nu_);
                   sup_ = phi0_;
                   // radial profile times e^{0.9 r}, scanned; the 1-norm rate loses sqrt(d)
                   double c0 = phi0_;
                   for (double r = 0.01; r <= 200.0; r += 0.01)
                     c0 = std::max(c0, std::pow(r, nu_) * bessel_k(nu_, r) * std::exp(0.9 * r));
                   decay_ = Exponential{0.9 / std::sqrt(d), 1.05 * c0};
                 },
                 [&](const family::Gim& g) {
                   sup_ = std::pow(g.c, -2 * g.m);
                   decay_ = Algebraic{2 * g.m, std::pow((1 + g.c * g.c) / (g.c * g.c), g.m)};
                 },
                 [&](const family::BSpline& b) {
                   support_ = 0.5 * b.n;
                   pd_ = b.n % 2 == 0;
                   sup_ = bspline_eval(b.n, 0.0);
                   decay_ = Exponential{1.0, std::exp(0.5 * b.n) * sup_};
                 },
                 [&](const family::BoxSpline222&) {
                   if (dim_ != 2) throw DimensionMismatch("box spline 222 is bivariate");
                   support_ = 2.0;  // lattice values vanish once |j|_inf >= 2
                   sup_ = 0.5;
                   decay_ = Exponential{1.0, 0.5 * std::exp(2.0)};
                 },
                 [&](const family::Polyharmonic& p) {
                   ph_c_ = polyharmonic_constant(p.m, dim_);
                   stencil_ = make_stencil(dim_, p.m);
                   if (dim_ == 1) {
                     support_ = p.m;
                     sup_ = std::abs(at(LatticeIndex{0}));
                     for (double x = 0; x <= p.m; x += 0.01) sup_ = std::max(sup_, std::abs(eval(&x)));
                     decay_ = Exponential{1.0, std::exp(double(p.m)) * sup_};
                   } else {
                     const Box box(dim_, 40);
                     double c0 = 0;
                     for (std::size_t i = 0; i < box.size(); ++i) {
                       const auto k = box.index(i);
                       c0 = std::max(c0, std::abs(at(k)) * std::pow(1 + k.norm(), d + 2));
                     }
                     sup_ = std::abs(at(LatticeIndex(dim_)));
                     decay_ = Algebraic{d + 2, 1.5 * c0};
                   }
                 },
             },
             fam_);
}

double Kernel::eval(const double* x) const {
  const int d = dim_;
  switch (fam_.index()) {
    case 0: {  // delta (tensor hat)
      double v = 1;
      for (int i = 0; i < d; ++i) v *= std::max(0.0, 1.0 - std::abs(x[i]));
      return v;
    }
    case 1:
      return std::exp(-std::get<family::Gaussian>(fam_).c * norm2(x, d));
    case 2: {
      const double r = std::sqrt(norm2(x, d));
      if (r == 0.0) return phi0_;
      return std::pow(r, nu_) * bessel_k(nu_, r);
    }
    case 3: {
      const auto& g = std::get<family::Gim>(fam_);
      return std::pow(g.c * g.c + norm2(x, d), -g.m);
    }
    case 4:
      return bspline_eval(std::get<family::BSpline>(fam_).n, x[0]);
    case 5:
      throw CapabilityError("box spline 222 can only be evaluated at lattice points");
    case 6: {
      const int m = std::get<family::Polyharmonic>(fam_).m;
      const int p = 2 * m - d;
      const long double r2 = norm2(x, d);
      if (d == 1 && std::abs(x[0]) >= m) return 0.0;
      if (r2 <= 64.0L) {
        long double acc = 0;
        for (const auto& [s, w] : stencil_) {
          long double q = 0;
          for (int i = 0; i < d; ++i) {
            const long double y = x[i] + s[i];
            q += y * y;
          }
          if (q == 0.0L) continue;
          const long double rr = std::sqrt(q);
          long double v = std::pow(rr, static_cast<long double>(p));
          if (d % 2 == 0) v *= std::log(rr);
          acc += w * v;
        }
        return static_cast<double>(ph_c_ * acc);
      }
      // far field: |x+s|^p = |x|^p rho^{p/2}, rho = 1 + delta; the |x|^p ln|x| part
      // is annihilated by the difference operator and dropped analytically
      long double acc = 0;
      for (const auto& [s, w] : stencil_) {
        long double dot = 0, ss = 0;
        for (int i = 0; i < d; ++i) {
          dot += x[i] * static_cast<long double>(s[i]);
          ss += static_cast<long double>(s[i]) * s[i];
        }
        const long double u = (2 * dot + ss) / r2;
        const long double lg = log1p_near(u);
        if (d % 2 == 0) {
          // p even: (1 + u)^{p/2} is a polynomial, no expm1 needed
          long double pw = 1;
          for (int i = 0; i < p / 2; ++i) pw *= 1 + u;
          acc += w * pw * 0.5L * lg;
        } else {
          acc += w * std::expm1(0.5L * p * lg);
        }
      }
      return static_cast<double>(ph_c_ * std::pow(r2, 0.5L * p) * acc);
    }
  }
  return 0.0;
}

double Kernel::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw DimensionMismatch("point dimension does not match kernel");
  return eval(x.data());
}

double Kernel::at(const LatticeIndex& k) const {
  if (k.dim() != dim_) throw DimensionMismatch("index dimension does not match kernel");
  if (std::holds_alternative<family::BoxSpline222>(fam_)) {
    const int a = k[0], b = k[1];
    if (a == 0 && b == 0) return 0.5;
    if ((a == 1 && b == 1) || (a == -1 && b == -1) || (a == 0 && std::abs(b) == 1) || (b == 0 && std::abs(a) == 1))
      return 1.0 / 12.0;
    return 0.0;
  }
  double x[kMaxDim];
  for (int i = 0; i < dim_; ++i) x[i] = k[i];
  return eval(x);
}

double Kernel::decay_bound(double r) const noexcept {
  if (support_ && r >= *support_) return 0.0;
  r = std::max(r, 0.0);
  return std::visit(overloaded{[&](const Algebraic& a) { return a.constant * std::pow(1 + r, -a.rate); },
                               [&](const Exponential& e) { return e.constant * std::exp(-e.rate * r); }},
                    decay_);
}

std::string Kernel::name() const {
  static const char* names[] = {"delta", "gaussian", "matern", "gim", "bspline", "box_spline_222", "polyharmonic"};
  return names[fam_.index()];
}

std::vector<std::pair<std::string, double>> Kernel::params() const {
  return std::visit(overloaded{
                        [](const family::Delta&) { return std::vector<std::pair<std::string, double>>{}; },
                        [](const family::Gaussian& g) { return std::vector<std::pair<std::string, double>>{{"c", g.c}}; },
                        [](const family::Matern& f) { return std::vector<std::pair<std::string, double>>{{"m", f.m}}; },
                        [](const family::Gim& g) {
                          return std::vector<std::pair<std::string, double>>{{"c", g.c}, {"m", g.m}};
                        },
                        [](const family::BSpline& b) {
                          return std::vector<std::pair<std::string, double>>{{"n", double(b.n)}};
                        },
                        [](const family::BoxSpline222&) { return std::vector<std::pair<std::string, double>>{}; },
                        [](const family::Polyharmonic& p) {
                          return std::vector<std::pair<std::string, double>>{{"m", double(p.m)}};
                        },
                    },
                    fam_);
}

std::string Kernel::describe() const {
  std::string s = name() + "(";
  bool first = true;
  for (const auto& [k, v] : params()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%s=%g", first ? "" : ",", k.c_str(), v);
    s += buf;
    first = false;
  }
  return s + ") d=" + std::to_string(dim_);
}

// ---- lattice sampling -----------------------------------------------------

double analytic_tail_bound(const Kernel& k, int radius) {
  const int d = k.dim();
  if (k.support() && radius + 1 >= *k.support()) return 0.0;
  double sum = 0;
  const int far = radius + 20000;
  for (int r = radius + 1; r <= far; ++r) {
    const double t = static_cast<double>(shell_count(d, r)) * k.decay_bound(r);
    sum += t;
    if (std::holds_alternative<Exponential>(k.decay()) && t < 1e-300) return sum;
  }
  if (const auto* a = std::get_if<Algebraic>(&k.decay()))
    sum += d * std::pow(2.0, d) * a->constant * std::pow(1.0 + far, d - a->rate) / (a->rate - d);
  return sum;
}

LatticeSamples lattice_samples(const Kernel& k, int radius) {
  LatticeSamples out{SymbolCoefficients(k.dim(), radius), analytic_tail_bound(k, radius)};
  sample_lattice_box(k, out.values.box(), out.values.values().data(), Exec::Parallel);
  return out;
}

TruncationRadius decay_truncation_radius(const Kernel& k, double tol, int max_radius) {
  if (!(tol > 0)) throw std::invalid_argument("tail tolerance must be positive");
  if (k.support()) {
    const int r = static_cast<int>(std::ceil(*k.support()));
    return {r, 0.0, false};
  }
  const int d = k.dim();
  int cap = max_radius;
  // keep the exact shell sums affordable in d > 1
  while (cap > 1 && std::pow(2.0 * cap + 1, d) > double(1u << 22)) cap /= 2;
  if (std::holds_alternative<Exponential>(k.decay())) {
    int r = 1;
    while (r < cap && analytic_tail_bound(k, r) > 1e-6 * tol) ++r;
    cap = r;
  }
  const Box box(d, cap);
  std::vector<double> vals(box.size());
  sample_lattice_box(k, box, vals.data(), Exec::Parallel);
  std::vector<double> shell(static_cast<std::size_t>(cap) + 1, 0.0);
  for (std::size_t i = 0; i < box.size(); ++i)
    shell[static_cast<std::size_t>(box.index(i).max_abs())] += std::abs(vals[i]);
  std::vector<double> tail(shell.size());
  double acc = analytic_tail_bound(k, cap);
  for (int r = cap; r >= 0; --r) {
    tail[static_cast<std::size_t>(r)] = acc;
    acc += shell[static_cast<std::size_t>(r)];
  }
  for (int r = 0; r <= cap; ++r)
    if (tail[static_cast<std::size_t>(r)] < tol) return {r, tail[static_cast<std::size_t>(r)], false};
  return {cap, tail[static_cast<std::size_t>(cap)], true};
}

KernelSymbolGrid kernel_symbol_grid(const Kernel& k, int M, std::size_t sample_budget) {
  const int d = k.dim();
  int R;
  if (k.support()) {
    R = static_cast<int>(std::ceil(*k.support()));
  } else {
    R = static_cast<int>((std::pow(static_cast<double>(sample_budget), 1.0 / d) - 1) / 2);
    if (std::holds_alternative<Exponential>(k.decay())) {
      int r = 1;
      while (r < R && analytic_tail_bound(k, r) > 1e-18 * k.sup_abs()) ++r;
      R = r;
    }
  }
  R = std::max(R, 1);
  const Box box(d, R);
  std::vector<double> vals(box.size());
  sample_lattice_box(k, box, vals.data(), Exec::Parallel);
  KernelSymbolGrid out{TorusGrid(d, M), R, analytic_tail_bound(k, R)};
  for (std::size_t i = 0; i < box.size(); ++i)
    if (vals[i] != 0.0) out.values[out.values.slot(box.index(i))] += vals[i];
  transform(out.values, true);
  return out;
}

double periodized_sup(const Kernel& k, int per_cell, int radius) {
  if (!k.full_eval()) throw CapabilityError("periodized sup needs off-lattice evaluation");
  const int d = k.dim();
  const Box box(d, radius);
  // remainder beyond the summed box: points n with |n|_inf > radius sit at distance >= |n|_inf - 1
  double tail = 0;
  if (!(k.support() && radius - 1 >= *k.support())) {
    for (int r = radius + 1; r <= radius + 20000; ++r) {
      const double t = double(shell_count(d, r)) * k.decay_bound(r - 1);
      tail += t;
      if (t < 1e-300) break;
    }
    if (const auto* a = std::get_if<Algebraic>(&k.decay()))
      tail += d * std::pow(2.0, d) * a->constant * std::pow(1.0 + radius + 19999, d - a->rate) / (a->rate - d);
  }
  // phi is even in each coordinate, so the periodized sum is even and 1-periodic per
  // axis: sampling t in [0, 1/2] covers the whole cell grid
  std::vector<double> ts;
  for (int q = 0; q < per_cell; ++q) {
    const double t = per_cell > 1 ? double(q) / (per_cell - 1) : 0.0;
    if (t <= 0.5 + 1e-12) ts.push_back(t);
  }
  std::size_t npts = 1;
  for (int i = 0; i < d; ++i) npts *= ts.size();
  double best = 0;
  std::vector<double> pt(static_cast<std::size_t>(d));
  for (std::size_t c = 0; c < npts; ++c) {
    std::size_t rem = c;
    for (int i = 0; i < d; ++i) {
      pt[static_cast<std::size_t>(i)] = ts[rem % ts.size()];
      rem /= ts.size();
    }
    best = std::max(best, abs_shift_sum(k, pt.data(), box, Exec::Parallel));
  }
  return best + tail;
}

// radius for sup_x sum_k |phi(x - k)|: exact box plus the analytic remainder
int periodized_radius(const Kernel& k) {
  if (k.support()) return static_cast<int>(std::ceil(*k.support())) + 2;
  if (std::holds_alternative<Exponential>(k.decay())) {
    int r = 2;
    while (r < 400 && k.decay_bound(r - 1) * std::pow(2.0 * r + 1, k.dim()) > 1e-17) ++r;
    return r;
  }
  return k.dim() == 1 ? 4000 : k.dim() == 2 ? 60 : 12;
}

}  // namespace whl
