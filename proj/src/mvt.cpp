#include "skewfa/mvt.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "skewfa/errors.hpp"
#include "skewfa/special.hpp"

namespace skewfa {

namespace {
constexpr double kNormalDofCutoff = 1e8;

void check_scale(const Eigen::VectorXd& x, const Eigen::MatrixXd& scale) {
  if (scale.rows() != x.size() || scale.cols() != x.size())
    throw ShapeError("mvt_cdf: scale dimension mismatch");
  for (int i = 0; i < scale.rows(); ++i)
    if (!(scale(i, i) > 0.0))
      throw DecompositionError("mvt_cdf: scale has a non-positive diagonal");
}
}  // namespace

double lower_orthant_prob(const Eigen::VectorXd& lower,
                          const Eigen::MatrixXd& scale, double dof,
                          const QmcOptions& opt) {
  const int m = static_cast<int>(lower.size());
  if (m == 0) return 1.0;
  check_scale(lower, scale);
  const bool is_t = dof < kNormalDofCutoff;
  if (is_t && !(dof > 0.0)) throw std::domain_error("lower_orthant_prob: dof <= 0");
  if (m == 1) {
    const double l = lower[0] / std::sqrt(scale(0, 0));
    return is_t ? student_t_cdf(-l, dof) : norm_cdf(-l);
  }
  if (m == 2) {
    const double s1 = std::sqrt(scale(0, 0)), s2 = std::sqrt(scale(1, 1));
    const double rho = scale(0, 1) / (s1 * s2);
    if (!(std::fabs(rho) <= 1.0 + 1e-12))
      throw DecompositionError("lower_orthant_prob: invalid correlation");
    return lower_orthant_prob_2d(lower[0] / s1, lower[1] / s2, rho, dof);
  }
  QmcOptions o = opt;
  if (o.abs_tol <= 0.0) o.abs_tol = m <= 3 ? 1e-6 : 1e-4;
  return lower_orthant_t(lower, scale, dof, o, /*want_moments=*/false).prob;
}

double mvt_cdf(const Eigen::VectorXd& x, const Eigen::MatrixXd& scale,
               double dof, const QmcOptions& opt) {
  if (!(dof > 0.0)) throw std::domain_error("mvt_cdf: dof must be > 0");
  // P(T <= x) = P(-T >= -x) and -T has the same central law.
  return lower_orthant_prob(-x, scale, dof, opt);
}

double mvn_cdf(const Eigen::VectorXd& x, const Eigen::MatrixXd& sigma,
               const QmcOptions& opt) {
  return lower_orthant_prob(-x, sigma, std::numeric_limits<double>::infinity(),
                            opt);
}

}  // namespace skewfa
