#pragma once

// Scalar special functions used by the distribution kernels and the
// degrees-of-freedom update. Everything here is a pure function.

namespace skewfa {

/// Digamma function psi(x) for x > 0, accurate to ~1e-12 relative on
/// [1e-3, 1e6]. Throws std::domain_error for x <= 0.
double digamma(double x);

/// log Gamma(x) for x > 0.
double log_gamma(double x);

double norm_pdf(double x);
double norm_log_pdf(double x);
double norm_cdf(double x);
/// log Phi(x), stable deep into the left tail.
double norm_log_cdf(double x);
/// Inverse of norm_cdf on (0,1), refined to full double precision.
double norm_quantile(double p);

/// Regularized incomplete beta I_x(a, b).
double inc_beta(double a, double b, double x);

/// Regularized lower incomplete gamma P(a, x).
double inc_gamma_lower(double a, double x);

/// Quantile of the chi-squared distribution with k degrees of freedom.
double chi2_quantile(double p, double k);

double student_t_pdf(double x, double nu);
double student_t_log_pdf(double x, double nu);
double student_t_cdf(double x, double nu);
double student_t_log_cdf(double x, double nu);

}  // namespace skewfa
