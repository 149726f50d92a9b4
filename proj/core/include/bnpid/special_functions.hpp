#pragma once

namespace bnpid {

/// ln B(a, b).
double log_beta(double a, double b);

/// Regularized incomplete beta I_x(a, b), i.e. the Beta(a, b) CDF at x.
/// Throws ParameterError unless 0 <= x <= 1 and a, b > 0.
double beta_cdf(double x, double a, double b);

/// Regularized lower incomplete gamma P(shape, rate * x): the CDF of a
/// Gamma(shape, rate) variable. Zero for x <= 0.
double gamma_cdf(double x, double shape, double rate);

/// Inverse of gamma_cdf in x. Throws ParameterError unless 0 < p < 1.
double gamma_quantile(double p, double shape, double rate);

/// Standard normal CDF, survival function and quantile.
double normal_cdf(double x);
double normal_sf(double x);
double normal_quantile(double p);

}  // namespace bnpid
