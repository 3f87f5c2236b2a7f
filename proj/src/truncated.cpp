#include "skewfa/truncated.hpp"

#include <cmath>
#include <stdexcept>

#include "skewfa/errors.hpp"
#include "skewfa/special.hpp"

namespace skewfa {

namespace {

constexpr double kNormalDofCutoff = 1e8;
constexpr double kDegenerateFloor = 1e-12;

// Moments of a standard univariate t (or normal, dof = inf) truncated to
// (alpha, inf): returns the region probability together with the conditional
// first and second moments.
void std_lower_trunc_1d(double alpha, double dof, double& prob, double& m1,
                        double& m2) {
  if (dof >= kNormalDofCutoff) {
    prob = norm_cdf(-alpha);
    if (prob < kDegenerateFloor)
      throw DegenerateTruncationError("trunc_t_moments: negligible orthant mass");
    const double ratio = norm_pdf(alpha) / prob;
    m1 = ratio;
    m2 = 1.0 + alpha * ratio;
    return;
  }
  if (!(dof > 1.0))
    throw std::domain_error("trunc_t_moments: mean requires dof > 1");
  prob = student_t_cdf(-alpha, dof);
  if (prob < kDegenerateFloor)
    throw DegenerateTruncationError("trunc_t_moments: negligible orthant mass");
  const double f = student_t_pdf(alpha, dof);
  m1 = f * (dof + alpha * alpha) / ((dof - 1.0) * prob);
  if (!(dof > 2.0))
    throw std::domain_error("trunc_t_moments: second moment requires dof > 2");
  // integral of x^2 f_nu over (alpha, inf):
  //   nu * [ (nu-1)/(nu-2) * S_{nu-2}(lambda*alpha) - S_nu(alpha) ],
  // lambda = sqrt((nu-2)/nu).
  const double lambda = std::sqrt((dof - 2.0) / dof);
  const double s_lower = student_t_cdf(-lambda * alpha, dof - 2.0);
  const double integral = dof * ((dof - 1.0) / (dof - 2.0) * s_lower - prob);
  m2 = integral / prob;
}

}  // namespace

TruncTMoments trunc_t_moments(const TruncTSpec& spec, const QmcOptions& opt) {
  const int m = static_cast<int>(spec.center.size());
  if (spec.scale.rows() != m || spec.scale.cols() != m)
    throw ShapeError("trunc_t_moments: scale dimension mismatch");
  const bool is_t = spec.dof < kNormalDofCutoff;
  if (is_t && !(spec.dof > 0.0))
    throw std::domain_error("trunc_t_moments: dof must be > 0");

  TruncTMoments out;
  if (m == 0) {
    out.mean = Eigen::VectorXd();
    out.second_moment = Eigen::MatrixXd();
    out.prob = 1.0;
    return out;
  }
  if (m == 1) {
    const double c = spec.center[0];
    const double sd = std::sqrt(spec.scale(0, 0));
    const double alpha = -c / sd;
    double prob, m1, m2;
    std_lower_trunc_1d(alpha, spec.dof, prob, m1, m2);
    out.prob = prob;
    out.mean = Eigen::VectorXd::Constant(1, c + sd * m1);
    out.second_moment =
        Eigen::MatrixXd::Constant(1, 1, c * c + 2.0 * c * sd * m1 + sd * sd * m2);
    return out;
  }
  if (is_t && !(spec.dof > 2.0))
    throw std::domain_error("trunc_t_moments: second moment requires dof > 2");

  // a = center + T with T central; a > 0 is T >= -center.
  QmcOptions o = opt;
  if (o.abs_tol <= 0.0) o.abs_tol = 1e-6;
  const OrthantResult res =
      lower_orthant_t(-spec.center, spec.scale, spec.dof, o, /*want_moments=*/true);
  out.prob = res.prob;
  out.mean = spec.center + res.mean;
  out.second_moment = spec.center * spec.center.transpose() +
                      spec.center * res.mean.transpose() +
                      res.mean * spec.center.transpose() + res.second_moment;
  out.second_moment =
      0.5 * (out.second_moment + out.second_moment.transpose()).eval();
  return out;
}

}  // namespace skewfa
