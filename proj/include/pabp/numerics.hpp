#pragma once

#include <cstdint>

namespace pabp::num {

/// Natural log of Gamma(x), x > 0. Evaluated in extended precision
/// (Stirling series with an upward shift below x = 10) so that
/// differences of large values stay accurate. Throws std::domain_error
/// for x <= 0.
long double log_gamma(long double x);
double log_gamma(double x);

/// ln C(n, d) for 0 <= d <= n.
double log_choose(std::int64_t n, std::int64_t d);

/// Gamma(x + a) / Gamma(x) via log-gamma differences. Requires x > 0 and
/// x + a > 0; throws std::domain_error otherwise.
double gamma_ratio(double x, double a);

/// |gamma_ratio(x, a) / x^a - 1|, the deviation from the first-order
/// asymptotic x^a.
double gamma_ratio_deviation(double x, double a);

/// Parameters of I = integral over [j, t] of (log x)^k x^(-1-alpha) dx.
struct IntegralParams {
  int k = 0;         // nonnegative
  double alpha = 1;  // positive
  double j = 1;      // >= 1
  double t = 2;      // > j
};

/// Adaptive quadrature of the integral above, relative error < 1e-8.
double integral_I(const IntegralParams& p);

/// Explicit closed upper bound: for log j > 1,
///   (k! / (1 ^ alpha^(k+1))) * (log j / (log j - 1)) * (log j)^k / j^alpha,
/// otherwise the unexpanded (k+1)-term sum
///   sum_s (k!/(k-s)!) alpha^-(s+1) (log j)^(k-s) / j^alpha.
double integral_bound(const IntegralParams& p);

}  // namespace pabp::num
