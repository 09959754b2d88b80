#include "gbcsp/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <fmt/format.h>

namespace gbcsp::analytics {

namespace {


// i(i-1)..(i-k+1) / (n(n-1)..(n-k+1)); zero for i < k.
long double falling_ratio(std::int64_t i, std::int64_t n, std::int64_t k) {
  if (i < k) return 0.0L;
  long double ratio = 1.0L;
  for (std::int64_t j = 0; j < k; ++j)
    ratio *= static_cast<long double>(i - j) / static_cast<long double>(n - j);
  return ratio;
}

double log_exact_impl(std::int64_t n, double log_d, std::int64_t k, double p, double t) {
  // Terms: the root (ln 1 = 0) and ln(d * d^i * g(i)^t) for i = 0..n-1.
  std::vector<long double> terms;
  terms.reserve(static_cast<std::size_t>(n) + 1);
  terms.push_back(0.0L);
  const long double ld = log_d;
  for (std::int64_t i = 0; i < n; ++i) {
    long double term = ld * static_cast<long double>(i + 1);
    if (t > 0) term += static_cast<long double>(t) * std::log1p(-static_cast<long double>(p) *
                                                                falling_ratio(i, n, k));
    terms.push_back(term);
  }
  const long double peak = *std::max_element(terms.begin(), terms.end());
  long double sum = 0.0L;
  for (long double term : terms) sum += std::exp(term - peak);
  return static_cast<double>(peak + std::log(sum));
}

void require_unit_interval(double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw Error(ErrorKind::OutOfRange, fmt::format("x = {} outside [0, 1]", x));
}

// Which estimate to use: r relative to r0 with the critical band.
Regime regime_of(double r, double r0) {
  if (std::abs(r - r0) <= kCriticalBand * r0) return Regime::Critical;
  return r < r0 ? Regime::Subcritical : Regime::Supercritical;
}

double softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double critical_log_prefactor(const AnalyticParams& ap, std::int64_t n) {
  return log_phi(1.0, ap) - std::numbers::ln2 +
         0.5 * std::log(2.0 * std::numbers::pi * static_cast<double>(n) / -f_second(1.0, ap));
}

}  // namespace

std::string_view to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::Subcritical: return "subcritical";
    case Regime::Critical: return "critical";
    case Regime::Supercritical: return "supercritical";
  }
  return "unknown";
}

AnalyticParams AnalyticParams::validate(double d, std::int64_t k, double p, double r) {
  if (!(d >= 2.0) || !std::isfinite(d))
    throw Error(ErrorKind::DegenerateDomain, fmt::format("d must be >= 2, got {}", d));
  if (k < 2) throw Error(ErrorKind::OutOfRange, fmt::format("k must be >= 2, got {}", k));
  if (!(p > 0.0)) throw Error(ErrorKind::ZeroTightness, fmt::format("p must be > 0, got {}", p));
  const double limit = std::pow(d, -static_cast<double>(k - 1));
  if (!(p < limit))
    throw Error(ErrorKind::NonStrict,
                fmt::format("p = {} must be below 1/d^(k-1) = {}", p, limit));
  if (!(r > 0.0) || !std::isfinite(r))
    throw Error(ErrorKind::DegenerateDensity, fmt::format("r must be positive, got {}", r));
  AnalyticParams ap;
  ap.d_ = d;
  ap.k_ = k;
  ap.p_ = p;
  ap.r_ = r;
  ap.log_d_ = std::log(d);
  return ap;
}

AnalyticParams AnalyticParams::from(const Params& params) {
  require_strict(params);
  if (params.t() == 0)
    throw Error(ErrorKind::DegenerateDensity, "t = 0 has no positive constraint density");
  return validate(static_cast<double>(params.d()), params.k(), params.p(), params.r());
}

Rational g_exact(std::int64_t i, const Params& params) {
  require_strict(params);
  const std::int64_t n = params.n();
  const std::int64_t k = params.k();
  if (i < 0 || i > n - 1)
    throw Error(ErrorKind::OutOfRange, fmt::format("level {} outside [0, {}]", i, n - 1));
  if (i <= k - 1) return Rational(1);
  BigInt numerator = 1;
  BigInt denominator = 1;
  for (std::int64_t j = 0; j < k; ++j) {
    numerator *= i - j;
    denominator *= n - j;
  }
  const Rational p(BigInt(params.q()), BigInt(params.tuple_count()));
  return Rational(1) - p * Rational(numerator, denominator);
}

double g(std::int64_t i, std::int64_t n, const AnalyticParams& ap) {
  if (n < ap.k() || i < 0 || i > n - 1)
    throw Error(ErrorKind::OutOfRange, fmt::format("level {} outside [0, {}]", i, n - 1));
  return static_cast<double>(1.0L - static_cast<long double>(ap.p()) * falling_ratio(i, n, ap.k()));
}

double log_exact_expected_nodes(const Params& params) {
  require_strict(params);
  return log_exact_impl(params.n(), std::log(static_cast<double>(params.d())), params.k(),
                        params.p(), static_cast<double>(params.t()));
}

double log_exact_expected_nodes(const AnalyticParams& ap, std::int64_t n) {
  if (n < ap.k()) throw Error(ErrorKind::ArityExceedsVariables, "n must be at least k");
  return log_exact_impl(n, ap.log_d(), ap.k(), ap.p(), ap.r() * static_cast<double>(n));
}

double log_expected_solutions(const Params& params) {
  return static_cast<double>(params.n()) * std::log(static_cast<double>(params.d())) +
         static_cast<double>(params.t()) * std::log1p(-params.p());
}

double r_critical(double d, double p) {
  if (!(p > 0.0 && p < 1.0))
    throw Error(ErrorKind::OutOfRange, fmt::format("p = {} outside (0, 1)", p));
  return -std::log(d) / std::log1p(-p);
}

double uc_bound(double d, std::int64_t k) {
  if (!(d >= 2.0)) throw Error(ErrorKind::DegenerateDomain, "d must be >= 2");
  if (k < 2) throw Error(ErrorKind::OutOfRange, "k must be >= 2");
  if (k == 2) return 1.0;
  const double m = static_cast<double>(k - 2);
  const double kk = static_cast<double>(k);
  return 2.0 * std::pow(d, m) / (kk * std::pow(d - 1.0, m)) * std::pow((kk - 1.0) / m, m);
}

double r_zero(double d, std::int64_t k, double p) {
  return (1.0 - p) * std::log(d) / (p * static_cast<double>(k));
}

double f(double x, const AnalyticParams& ap) {
  require_unit_interval(x);
  return x * ap.log_d() + ap.r() * std::log1p(-ap.p() * std::pow(x, static_cast<double>(ap.k())));
}

double f_prime(double x, const AnalyticParams& ap) {
  require_unit_interval(x);
  const double k = static_cast<double>(ap.k());
  const double px_k = ap.p() * std::pow(x, k);
  return ap.log_d() - ap.r() * ap.p() * k * std::pow(x, k - 1.0) / (1.0 - px_k);
}

double f_second(double x, const AnalyticParams& ap) {
  require_unit_interval(x);
  const double k = static_cast<double>(ap.k());
  const double p = ap.p();
  const double one_minus = 1.0 - p * std::pow(x, k);
  return -ap.r() * p * (k * (k - 1.0) * std::pow(x, k - 2.0) + p * k * std::pow(x, 2.0 * k - 2.0)) /
         (one_minus * one_minus);
}

double sigma(double x, const AnalyticParams& ap) {
  const double k = static_cast<double>(ap.k());
  return k * (k - 1.0) * ap.p() / 2.0 * (std::pow(x, k - 1.0) - std::pow(x, k));
}

double log_phi(double x, const AnalyticParams& ap) {
  return ap.log_d() +
         ap.r() * sigma(x, ap) / (1.0 - ap.p() * std::pow(x, static_cast<double>(ap.k())));
}

Regime classify(const AnalyticParams& ap) { return regime_of(ap.r(), r_zero(ap)); }

double zeta(const AnalyticParams& ap, double tol) {
  const double r0 = r_zero(ap);
  if (!(ap.r() > r0))
    throw Error(ErrorKind::RegimeMismatch,
                fmt::format("r = {} is not above r0 = {}; f has no interior maximum", ap.r(), r0));
  if (!(tol > 0.0)) throw Error(ErrorKind::OutOfRange, "tolerance must be positive");
  // f' is strictly decreasing with f'(0) = ln d > 0 > f'(1).
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double slope = f_prime(mid, ap);
    if (slope > 0.0) {
      lo = mid;
    } else if (slope < 0.0) {
      hi = mid;
    } else {
      return mid;
    }
  }
  return 0.5 * (lo + hi);
}

double big_F(const AnalyticParams& ap, double tol) {
  if (ap.r() > r_zero(ap)) return f(zeta(ap, tol), ap);
  return ap.log_d() + ap.r() * std::log1p(-ap.p());
}

double big_F_from_maximizer(const AnalyticParams& ap, double z) {
  const double k = static_cast<double>(ap.k());
  const double y = ap.p() * std::pow(z, k);
  const double h = k * y + (1.0 - y) * std::log1p(-y);
  return ap.log_d() / (k * ap.p() * std::pow(z, k - 1.0)) * h;
}

double big_F_at_r_zero(double d, std::int64_t k, double p) {
  const double kk = static_cast<double>(k);
  return (1.0 - (1.0 - p) / (kk * p) * std::log1p(p / (1.0 - p))) * std::log(d);
}

double big_F_slope(const AnalyticParams& ap, double tol) {
  if (ap.r() > r_zero(ap))
    return std::log1p(-ap.p() * std::pow(zeta(ap, tol), static_cast<double>(ap.k())));
  return std::log1p(-ap.p());
}

Asymptote prefactor_and_asymptote(const AnalyticParams& ap, std::int64_t n, double tol) {
  if (n < ap.k()) throw Error(ErrorKind::ArityExceedsVariables, "n must be at least k");
  const double r0 = r_zero(ap);
  const double nn = static_cast<double>(n);

  Asymptote out;
  out.regime = regime_of(ap.r(), r0);
  switch (out.regime) {
    case Regime::Supercritical: {
      out.zeta = zeta(ap, tol);
      out.F = f(out.zeta, ap);
      out.log_prefactor = log_phi(out.zeta, ap) +
                          0.5 * std::log(2.0 * std::numbers::pi * nn / -f_second(out.zeta, ap));
      break;
    }
    case Regime::Critical: {
      out.zeta = 1.0;
      out.F = f(1.0, ap);
      out.log_prefactor = critical_log_prefactor(ap, n);
      break;
    }
    case Regime::Subcritical: {
      out.zeta = 1.0;
      out.F = f(1.0, ap);
      // d^(1 - r/r0) - 1 > 0 below r0.
      out.log_prefactor =
          log_phi(1.0, ap) - std::log(std::expm1((1.0 - ap.r() / r0) * ap.log_d()));
      break;
    }
  }
  out.log_T_asym = softplus(out.log_prefactor + nn * out.F);

  if (out.regime != Regime::Critical && std::abs(ap.r() - r0) <= kNearCriticalBand * r0) {
    out.neighbor_log_T_asym = softplus(critical_log_prefactor(ap, n) + nn * f(1.0, ap));
    out.warning = fmt::format(
        "r = {:.12g} is within {:.0e} relative of r0 = {:.12g}; the {} estimate is inaccurate "
        "here, boundary estimate reported alongside",
        ap.r(), kNearCriticalBand, r0, to_string(out.regime));
  }
  return out;
}

Asymptote prefactor_and_asymptote(const Params& params, double tol) {
  return prefactor_and_asymptote(AnalyticParams::from(params), params.n(), tol);
}

Prediction predict(const Params& params, double tol) {
  const AnalyticParams ap = AnalyticParams::from(params);
  const Asymptote asym = prefactor_and_asymptote(ap, params.n(), tol);

  Prediction out;
  out.regime = asym.regime;
  out.zeta = asym.zeta;
  out.F = asym.F;
  out.log_prefactor = asym.log_prefactor;
  out.log_T_asym = asym.log_T_asym;
  out.neighbor_log_T_asym = asym.neighbor_log_T_asym;
  out.warning = asym.warning;
  out.log_T_exact = log_exact_expected_nodes(params);
  out.r0 = r_zero(ap);
  out.r_cr = r_critical(ap.d(), ap.p());
  out.log_EN = log_expected_solutions(params);
  out.uc_bound = uc_bound(ap.d(), ap.k());
  return out;
}

}  // namespace gbcsp::analytics
