#pragma once

// Closed-form quantities for Model GB under the strict tightness condition
// p < 1/d^(k-1): the level probability g(i), the exact expected node count
// of the all-solutions backtracker, the first-moment and unit-constraint
// thresholds, the rate function f(x) = x ln d + r ln(1 - p x^k) with its
// maximum F(r), and the Laplace-type asymptotic estimate
// T ~ 1 + p(r) exp(n F(r)).
//
// Everything that scales like a node count is returned as a natural log.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "gbcsp/model.hpp"
#include "gbcsp/rational.hpp"

namespace gbcsp::analytics {

inline constexpr double kDefaultTol = 1e-12;
/// |r - r0| <= kCriticalBand * r0 selects the boundary (r = r0) estimate.
inline constexpr double kCriticalBand = 1e-9;
/// Outside the critical band but within this relative distance of r0 the
/// estimate is flagged and the boundary estimate is reported alongside.
inline constexpr double kNearCriticalBand = 1e-3;

/// Continuum parameters: d and p real, r = t/n real.
class AnalyticParams {
 public:
  /// Requires d >= 2, k >= 2, 0 < p < 1/d^(k-1), r > 0.
  static AnalyticParams validate(double d, std::int64_t k, double p, double r);
  /// From strict integer parameters with t > 0.
  static AnalyticParams from(const Params& params);

  double d() const noexcept { return d_; }
  std::int64_t k() const noexcept { return k_; }
  double p() const noexcept { return p_; }
  double r() const noexcept { return r_; }
  double log_d() const noexcept { return log_d_; }

  AnalyticParams with_r(double r) const { return validate(d_, k_, p_, r); }

 private:
  AnalyticParams() = default;
  double d_ = 2;
  std::int64_t k_ = 2;
  double p_ = 0;
  double r_ = 0;
  double log_d_ = 0;
};

enum class Regime { Subcritical, Critical, Supercritical };
std::string_view to_string(Regime regime) noexcept;

/// Probability that a random constraint still has a compatible tuple when
/// the first i variables are set: 1 - p * i(i-1)..(i-k+1) / (n(n-1)..(n-k+1)).
/// Exact, for strict params and 0 <= i <= n-1.
Rational g_exact(std::int64_t i, const Params& params);
/// Same quantity in floating point for continuum p.
double g(std::int64_t i, std::int64_t n, const AnalyticParams& ap);

/// ln(1 + d * sum_{i=0}^{n-1} d^i g(i)^t), summed in the log domain.
double log_exact_expected_nodes(const Params& params);
/// Continuum form with t = r*n (not necessarily an integer).
double log_exact_expected_nodes(const AnalyticParams& ap, std::int64_t n);

/// ln E(N) = n ln d + t ln(1 - p).
double log_expected_solutions(const Params& params);

/// First-moment threshold -ln d / ln(1 - p).
double r_critical(double d, double p);

/// Density below which the unit-constraint heuristic succeeds with positive
/// probability: 2 d^(k-2) / (k (d-1)^(k-2)) * ((k-1)/(k-2))^(k-2), and 1 for k = 2.
double uc_bound(double d, std::int64_t k);

/// Boundary between the boundary maximum (r <= r0) and the interior maximum
/// of f: (1 - p) ln d / (p k).
double r_zero(double d, std::int64_t k, double p);
inline double r_zero(const AnalyticParams& ap) { return r_zero(ap.d(), ap.k(), ap.p()); }

double f(double x, const AnalyticParams& ap);
double f_prime(double x, const AnalyticParams& ap);
double f_second(double x, const AnalyticParams& ap);

/// sigma(x) = k(k-1)p/2 * (x^(k-1) - x^k), the 1/n correction of ln g.
double sigma(double x, const AnalyticParams& ap);
/// ln phi(x) = ln d + r sigma(x) / (1 - p x^k).
double log_phi(double x, const AnalyticParams& ap);

Regime classify(const AnalyticParams& ap);

/// Interior maximizer of f: the root of f' in (0, 1), by bisection until the
/// bracket is narrower than tol. Throws Error{RegimeMismatch} when r <= r0.
double zeta(const AnalyticParams& ap, double tol = kDefaultTol);

/// max of f on [0, 1]: f(zeta) above r0, f(1) = ln d + r ln(1 - p) otherwise.
double big_F(const AnalyticParams& ap, double tol = kDefaultTol);
/// Alternative form of F above r0, written through the maximizer alone:
/// ln d / (k p z^(k-1)) * (k p z^k + (1 - p z^k) ln(1 - p z^k)).
double big_F_from_maximizer(const AnalyticParams& ap, double z);
/// Closed form of F at r = r0: (1 - (1-p)/(kp) ln(1 + p/(1-p))) ln d.
double big_F_at_r_zero(double d, std::int64_t k, double p);
/// dF/dr: ln(1 - p zeta^k) above r0, ln(1 - p) at or below.
double big_F_slope(const AnalyticParams& ap, double tol = kDefaultTol);

struct Asymptote {
  Regime regime = Regime::Subcritical;
  double zeta = 1.0;
  double F = 0.0;
  double log_prefactor = 0.0;
  /// ln(1 + p(r) e^(n F)).
  double log_T_asym = 0.0;
  /// Boundary-case estimate, reported when r is near but outside the band.
  std::optional<double> neighbor_log_T_asym;
  std::string warning;
};

Asymptote prefactor_and_asymptote(const AnalyticParams& ap, std::int64_t n,
                                  double tol = kDefaultTol);
Asymptote prefactor_and_asymptote(const Params& params, double tol = kDefaultTol);

struct Prediction {
  Regime regime = Regime::Subcritical;
  double zeta = 1.0;
  double F = 0.0;
  double log_prefactor = 0.0;
  double log_T_exact = 0.0;
  double log_T_asym = 0.0;
  double r0 = 0.0;
  double r_cr = 0.0;
  double log_EN = 0.0;
  double uc_bound = 0.0;
  std::optional<double> neighbor_log_T_asym;
  std::string warning;
};

/// All analytic outputs for strict params with t > 0 (Error{DegenerateDensity}
/// for t = 0).
Prediction predict(const Params& params, double tol = kDefaultTol);

}  // namespace gbcsp::analytics
