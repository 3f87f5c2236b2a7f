#include "skewfa/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace skewfa {

namespace {
constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

double digamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("digamma: x must be > 0");
  // Recur up to x >= 10, then the asymptotic series in 1/x^2.
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // Bernoulli-number series: ln x - 1/(2x) - sum B_2n / (2n x^{2n}).
  double series = -inv2 * (1.0 / 12.0
                  - inv2 * (1.0 / 120.0
                  - inv2 * (1.0 / 252.0
                  - inv2 * (1.0 / 240.0
                  - inv2 * (1.0 / 132.0
                  - inv2 * (691.0 / 32760.0
                  - inv2 * (1.0 / 12.0)))))));
  return acc + std::log(x) - 0.5 * inv + series;
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: x must be > 0");
  return std::lgamma(x);
}

double norm_pdf(double x) { return std::exp(-0.5 * x * x - kLogSqrt2Pi); }

double norm_log_pdf(double x) { return -0.5 * x * x - kLogSqrt2Pi; }

double norm_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double norm_log_cdf(double x) {
  if (x > -8.0) {
    return std::log(norm_cdf(x));
  }
  // Asymptotic expansion of Mills' ratio in the far left tail.
  const double x2 = x * x;
  double series = 1.0 - 1.0 / x2 + 3.0 / (x2 * x2) - 15.0 / (x2 * x2 * x2)
                  + 105.0 / (x2 * x2 * x2 * x2);
  return norm_log_pdf(x) - std::log(-x) + std::log(series);
}

double norm_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -kInf;
    if (p == 1.0) return kInf;
    throw std::domain_error("norm_quantile: p outside [0,1]");
  }
  // Acklam's rational approximation followed by one Halley step.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    double q = p - 0.5;
    double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // Halley refinement.
  double e = norm_cdf(x) - p;
  double u = e / norm_pdf(x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

namespace {

// Continued fraction for the regularized incomplete beta (modified Lentz).
double beta_cf(double a, double b, double x) {
  const double tiny = 1e-300;
  const double eps = 1e-15;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double den = 1.0 - qab * x / qap;
  if (std::fabs(den) < tiny) den = tiny;
  den = 1.0 / den;
  double h = den;
  for (int m = 1; m <= 300; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    den = 1.0 + aa * den;
    if (std::fabs(den) < tiny) den = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    den = 1.0 / den;
    h *= den * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    den = 1.0 + aa * den;
    if (std::fabs(den) < tiny) den = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    den = 1.0 / den;
    const double del = den * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h;
}

}  // namespace

double inc_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw std::domain_error("inc_beta: a,b must be > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double lbeta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - lbeta);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cf(a, b, x) / a;
  }
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double inc_gamma_lower(double a, double x) {
  if (!(a > 0.0)) throw std::domain_error("inc_gamma_lower: a must be > 0");
  if (x <= 0.0) return 0.0;
  const double lg = std::lgamma(a);
  if (x < a + 1.0) {
    // Series representation.
    double ap = a, sum = 1.0 / a, del = sum;
    for (int n = 0; n < 500; ++n) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - lg);
  }
  // Continued fraction for Q(a,x), then complement.
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, den = 1.0 / b, h = den;
  for (int i = 1; i <= 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    den = an * den + b;
    if (std::fabs(den) < tiny) den = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    den = 1.0 / den;
    const double del = den * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return 1.0 - std::exp(-x + a * std::log(x) - lg) * h;
}

double chi2_quantile(double p, double k) {
  if (!(k > 0.0)) throw std::domain_error("chi2_quantile: k must be > 0");
  if (!(p >= 0.0 && p < 1.0)) throw std::domain_error("chi2_quantile: p outside [0,1)");
  if (p == 0.0) return 0.0;
  // Wilson-Hilferty start, then Newton on P(k/2, x/2).
  const double a = k / 2.0;
  double z = norm_quantile(p);
  double t = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
  double x = k * t * t * t;
  if (x <= 0.0) x = 1e-8;
  for (int it = 0; it < 50; ++it) {
    const double f = inc_gamma_lower(a, x / 2.0) - p;
    const double logpdf = (a - 1.0) * std::log(x / 2.0) - x / 2.0 - std::lgamma(a)
                          - std::log(2.0);
    const double pdf = std::exp(logpdf);
    if (pdf <= 0.0) break;
    double step = f / pdf;
    if (std::fabs(step) > 0.5 * x) step = std::copysign(0.5 * x, step);
    x -= step;
    if (x <= 0.0) x = 1e-12;
    if (std::fabs(step) < 1e-12 * (1.0 + x)) break;
  }
  return x;
}

double student_t_pdf(double x, double nu) {
  return std::exp(student_t_log_pdf(x, nu));
}

double student_t_log_pdf(double x, double nu) {
  if (!(nu > 0.0)) throw std::domain_error("student_t_pdf: nu must be > 0");
  return std::lgamma((nu + 1.0) / 2.0) - std::lgamma(nu / 2.0)
         - 0.5 * std::log(nu * M_PI)
         - 0.5 * (nu + 1.0) * std::log1p(x * x / nu);
}

double student_t_cdf(double x, double nu) {
  if (!(nu > 0.0)) throw std::domain_error("student_t_cdf: nu must be > 0");
  if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
  const double ib = inc_beta(nu / 2.0, 0.5, nu / (nu + x * x));
  return x >= 0.0 ? 1.0 - 0.5 * ib : 0.5 * ib;
}

double student_t_log_cdf(double x, double nu) {
  if (x >= 0.0) return std::log1p(-0.5 * inc_beta(nu / 2.0, 0.5, nu / (nu + x * x)));
  return std::log(0.5) + std::log(inc_beta(nu / 2.0, 0.5, nu / (nu + x * x)));
}

}  // namespace skewfa
