#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "whlattice/cardinal.hpp"
#include "whlattice/semicardinal.hpp"

namespace whl {

struct IllConditioned : std::runtime_error {
  IllConditioned(double rcond, double floor);
  double rcond;
};

struct InsufficientSamples : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Dense [phi(j - k)] on a finite window, LU with partial pivoting, factored once.
class FiniteSection {
 public:
  FiniteSection(const Kernel& k, std::vector<LatticeIndex> window, std::size_t cap = 4096, double rcond_floor = 1e-14);
  ~FiniteSection();
  FiniteSection(FiniteSection&&) noexcept;
  FiniteSection& operator=(FiniteSection&&) noexcept;

  const std::vector<LatticeIndex>& window() const noexcept { return window_; }
  double rcond() const noexcept { return rcond_; }
  std::size_t position(const LatticeIndex& k) const;  // throws if k is not in the window

  struct Solution {
    std::vector<double> c;
    double residual = 0;  // ||T c - rhs||_inf
  };
  Solution solve(std::span<const double> rhs) const;
  Solution solve_delta(const LatticeIndex& j) const;

 private:
  struct Impl;
  Impl* impl_;
  std::vector<LatticeIndex> window_;
  double rcond_ = 0;
};

FiniteSection::Solution finite_section_solve(const Kernel& k, const std::vector<LatticeIndex>& window,
                                             std::span<const double> rhs);

enum class DecayModel { Algebraic, Exponential };
enum class Verdict { Consistent, Violated };

struct DecaySample {
  double dist;
  double value;
};

struct DecayFit {
  DecayModel model = DecayModel::Exponential;
  double rate = 0;       // log|v| ~ b - rate * x, x = dist or log(1 + dist)
  double intercept = 0;
  double r_squared = 0;
  double lo = 0, hi = 0;  // dist range used
  std::size_t samples = 0;
  Verdict verdict = Verdict::Consistent;
};

inline constexpr double kNoiseFloor = 1e-13;

// the verdict compares against claimed - slack, or only asks for a positive rate
DecayFit fit_decay(std::span<const DecaySample> samples, DecayModel model, std::optional<double> claimed = {},
                   double slack = 0.0);

// sup of |v| (1 + dist)^alpha per dyadic ring [2,4), [4,8), ... with the last ring closed at hi
struct RingProfile {
  std::vector<double> edges;  // ring i is [edges[i], edges[i+1])
  std::vector<double> sup;    // 0 where a ring has no usable sample
  double variation = 0;       // |s_last - s_prev| / max(s_last, s_prev) over the two outer rings
};
RingProfile dyadic_rings(std::span<const DecaySample> samples, double alpha, double lo = 2, double hi = 50);

// d = 1 kernels with a closed-form transform: Gaussian and Matern
struct NativeQuadratureSpec {
  Kernel kernel;
  double range = 0;    // integrate over |t| <= range; 0 picks it from the transform tail
  double step = 0.1;   // coarsest trapezoid step
  int refinements = 5; // step halvings after the first pass

  explicit NativeQuadratureSpec(Kernel k);
  double transform(double t) const;  // phi-hat(t) = int phi(x) e^{-ixt} dx
  double tail(double T) const;       // int_{|t|>T} phi-hat
  double effective_range(double scale) const;
};

struct IdentityCheck {
  double quadrature = 0;  // (f, chi)_phi by quadrature at the finest step
  double series = 0;      // sum_k a_k f(k)
  double residual = 0;
  double truncation = 0;  // transform mass beyond the range times the coefficient norm
  std::vector<double> history;  // residual per step
  bool refinement_ok = true;    // every halving halves the residual or stays under the floor
};

// f = phi(. - x0); (f, chi)_phi = (2 pi)^{-1} int phi-hat(t) Re[e^{-i x0 t} sum_k a_k e^{ikt}] dt
IdentityCheck fundamental_identity_check(const NativeQuadratureSpec& q, const CardinalSystem& cs, double x0);
IdentityCheck fundamental_identity_check(const NativeQuadratureSpec& q, const SemiCardinalSystem& sc,
                                         const LatticeIndex& j, double x0);
// (chi, chi)_phi against a_0
IdentityCheck native_self_check(const NativeQuadratureSpec& q, const CardinalSystem& cs);

struct OracleComparison {
  double deviation = 0;  // max over interior entries
  double solve_residual = 0;
  double rcond = 0;
  std::size_t unknowns = 0, compared = 0;
};

// cardinal: a_k against the finite-section solve on Z^d ∩ box(n) with rhs delta_0
OracleComparison oracle_compare(const CardinalSystem& cs, int n, int buffer, std::size_t cap = 4096);
// semi-cardinal: a_{k,j} against finite-section columns on H ∩ box(n), interior k and j
OracleComparison oracle_compare(const SemiCardinalSystem& sc, int n, int buffer, std::size_t cap = 4096);

std::string to_string(DecayModel m);
std::string to_string(Verdict v);

}  // namespace whl
