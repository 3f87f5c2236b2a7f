#include "skewfa/distributions.hpp"

#include <cmath>
#include <stdexcept>

#include "skewfa/errors.hpp"
#include "skewfa/mvt.hpp"
#include "skewfa/rng.hpp"
#include "skewfa/special.hpp"

namespace skewfa {

namespace {
constexpr double kLog2Pi = 1.8378770664093453;
constexpr double kLog2 = 0.6931471805599453;
}  // namespace

void CfusnParams::validate() const {
  const int p = static_cast<int>(mu.size());
  if (sigma.rows() != p || sigma.cols() != p)
    throw ShapeError("CfusnParams: sigma must be p x p");
  if (delta.rows() != p) throw ShapeError("CfusnParams: delta must have p rows");
  if (!sigma.isApprox(sigma.transpose(), 1e-10))
    throw ShapeError("CfusnParams: sigma must be symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw DecompositionError("CfusnParams: sigma is not positive definite");
}

void CfustParams::validate() const {
  cfusn.validate();
  if (!(nu > 0.0) || !std::isfinite(nu))
    throw std::domain_error("CfustParams: nu must be finite and > 0");
}

MarginalKernel::MarginalKernel(const Eigen::VectorXd& mu,
                               const Eigen::MatrixXd& sigma,
                               const Eigen::MatrixXd& delta,
                               std::optional<double> nu_opt)
    : mu_(mu), sigma_(sigma), delta_full_(delta), nu_(nu_opt) {
  const int p = static_cast<int>(mu_.size());
  if (sigma_.rows() != p || sigma_.cols() != p)
    throw ShapeError("MarginalKernel: sigma must be p x p");
  if (delta_full_.rows() != p && delta_full_.cols() != 0)
    throw ShapeError("MarginalKernel: delta must have p rows");
  if (nu_ && !(*nu_ > 0.0))
    throw std::domain_error("MarginalKernel: nu must be > 0");

  for (int c = 0; c < delta_full_.cols(); ++c)
    if (!delta_full_.col(c).isZero(0.0)) active_.push_back(c);
  const int m = static_cast<int>(active_.size());
  delta_.resize(p, m);
  for (int c = 0; c < m; ++c) delta_.col(c) = delta_full_.col(active_[c]);

  omega_ = sigma_ + delta_ * delta_.transpose();
  omega_ = 0.5 * (omega_ + omega_.transpose()).eval();
  omega_llt_.compute(omega_);
  if (omega_llt_.info() != Eigen::Success)
    throw DecompositionError("MarginalKernel: Omega is not positive definite");
  log_det_omega_ = 0.0;
  for (int i = 0; i < p; ++i)
    log_det_omega_ += 2.0 * std::log(omega_llt_.matrixL()(i, i));
  omega_inv_delta_ = omega_llt_.solve(delta_);
  lambda_ = Eigen::MatrixXd::Identity(m, m) - delta_.transpose() * omega_inv_delta_;
  lambda_ = 0.5 * (lambda_ + lambda_.transpose()).eval();
}

double MarginalKernel::mahalanobis(const Eigen::VectorXd& y) const {
  const Eigen::VectorXd diff = y - mu_;
  return diff.dot(omega_llt_.solve(diff));
}

Eigen::VectorXd MarginalKernel::skew_shift(const Eigen::VectorXd& y) const {
  const Eigen::VectorXd q_red = omega_inv_delta_.transpose() * (y - mu_);
  Eigen::VectorXd q = Eigen::VectorXd::Zero(delta_full_.cols());
  for (std::size_t c = 0; c < active_.size(); ++c) q[active_[c]] = q_red[c];
  return q;
}

double MarginalKernel::log_orthant(const Eigen::VectorXd& point,
                                   const Eigen::MatrixXd& scale, double dof,
                                   const QmcOptions& opt) const {
  const int m = static_cast<int>(point.size());
  if (m == 0) return 0.0;
  if (m == 1) {
    const double x = point[0] / std::sqrt(scale(0, 0));
    return std::isinf(dof) ? norm_log_cdf(x) : student_t_log_cdf(x, dof);
  }
  const double prob = lower_orthant_prob(-point, scale, dof, opt);
  return std::log(prob);
}

double MarginalKernel::log_density(const Eigen::VectorXd& y,
                                   const QmcOptions& opt) const {
  if (y.size() != mu_.size()) throw ShapeError("log_density: y has wrong length");
  const int p = this->p();
  const int m = static_cast<int>(active_.size());
  const double d = mahalanobis(y);
  const Eigen::VectorXd q = omega_inv_delta_.transpose() * (y - mu_);
  if (!nu_) {
    const double log_phi = -0.5 * (p * kLog2Pi + log_det_omega_ + d);
    const double inf = std::numeric_limits<double>::infinity();
    return m * kLog2 + log_phi + log_orthant(q, lambda_, inf, opt);
  }
  const double nu = *nu_;
  const double log_t = std::lgamma(0.5 * (nu + p)) - std::lgamma(0.5 * nu) -
                       0.5 * p * std::log(nu * M_PI) - 0.5 * log_det_omega_ -
                       0.5 * (nu + p) * std::log1p(d / nu);
  const double shrink = std::sqrt((nu + p) / (nu + d));
  return m * kLog2 + log_t + log_orthant(q * shrink, lambda_, nu + p, opt);
}

MarginalKernel::EStep MarginalKernel::estep(const Eigen::VectorXd& y,
                                            const QmcOptions& cdf_opt,
                                            const QmcOptions& moment_opt) const {
  const int p = this->p();
  const int m = static_cast<int>(active_.size());
  const int r_full = static_cast<int>(delta_full_.cols());
  EStep out;
  out.u = Eigen::VectorXd::Zero(r_full);
  out.u2 = Eigen::MatrixXd::Zero(r_full, r_full);

  const double d = mahalanobis(y);
  const Eigen::VectorXd q = omega_inv_delta_.transpose() * (y - mu_);

  Eigen::VectorXd mean_red;
  Eigen::MatrixXd m2_red;
  if (!nu_) {
    const double inf = std::numeric_limits<double>::infinity();
    const double log_phi = -0.5 * (p * kLog2Pi + log_det_omega_ + d);
    out.log_density = m * kLog2 + log_phi + log_orthant(q, lambda_, inf, cdf_opt);
    out.w = 1.0;
    if (m > 0) {
      TruncTSpec ts{q, lambda_, inf};
      const TruncTMoments tm = trunc_t_moments(ts, moment_opt);
      mean_red = tm.mean;
      m2_red = tm.second_moment;
    }
  } else {
    const double nu = *nu_;
    const double log_t = std::lgamma(0.5 * (nu + p)) - std::lgamma(0.5 * nu) -
                         0.5 * p * std::log(nu * M_PI) - 0.5 * log_det_omega_ -
                         0.5 * (nu + p) * std::log1p(d / nu);
    const double log_den =
        log_orthant(q * std::sqrt((nu + p) / (nu + d)), lambda_, nu + p, cdf_opt);
    out.log_density = m * kLog2 + log_t + log_den;
    const double log_num = log_orthant(q * std::sqrt((nu + p + 2.0) / (nu + d)),
                                       lambda_, nu + p + 2.0, cdf_opt);
    double ratio = std::exp(log_num - log_den);
    if (!std::isfinite(ratio)) ratio = 1.0;
    out.w = (nu + p) / (nu + d) * ratio;
    if (m > 0) {
      const double c = (nu + d) / (nu + p + 2.0);
      TruncTSpec ts{q, c * lambda_, nu + p + 2.0};
      const TruncTMoments tm = trunc_t_moments(ts, moment_opt);
      mean_red = out.w * tm.mean;
      m2_red = out.w * tm.second_moment;
    }
  }
  for (int a = 0; a < m; ++a) {
    out.u[active_[a]] = mean_red[a];
    for (int b = 0; b < m; ++b) out.u2(active_[a], active_[b]) = m2_red(a, b);
  }
  return out;
}

double cfusn_log_density(const Eigen::VectorXd& y, const CfusnParams& params) {
  params.validate();
  MarginalKernel kernel(params.mu, params.sigma, params.delta, std::nullopt);
  return kernel.log_density(y);
}

double cfusn_density(const Eigen::VectorXd& y, const CfusnParams& params) {
  return std::exp(cfusn_log_density(y, params));
}

double cfust_log_density(const Eigen::VectorXd& y, const CfustParams& params) {
  params.validate();
  MarginalKernel kernel(params.cfusn.mu, params.cfusn.sigma, params.cfusn.delta,
                        params.nu);
  return kernel.log_density(y);
}

double cfust_density(const Eigen::VectorXd& y, const CfustParams& params) {
  return std::exp(cfust_log_density(y, params));
}

namespace {

Eigen::MatrixXd sample_convolution(const CfusnParams& params,
                                   std::optional<double> nu, int n,
                                   std::uint64_t seed) {
  params.validate();
  if (nu && !(*nu > 0.0)) throw std::domain_error("sample: nu must be > 0");
  if (n < 1) throw std::domain_error("sample: n must be >= 1");
  const int p = static_cast<int>(params.mu.size());
  const int r = static_cast<int>(params.delta.cols());
  Eigen::LLT<Eigen::MatrixXd> llt(params.sigma);
  if (llt.info() != Eigen::Success)
    throw DecompositionError("sample: sigma is not positive definite");
  const Eigen::MatrixXd L = llt.matrixL();
  Eigen::MatrixXd out(n, p);
  Eigen::VectorXd u(r), z(p);
  for (int j = 0; j < n; ++j) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(j));
    double scale = 1.0;
    if (nu) scale = 1.0 / std::sqrt(rng.gamma(*nu / 2.0, *nu / 2.0));
    for (int i = 0; i < r; ++i) u[i] = std::fabs(rng.normal());
    for (int i = 0; i < p; ++i) z[i] = rng.normal();
    out.row(j) = (params.mu + scale * (params.delta * u + L * z)).transpose();
  }
  return out;
}

}  // namespace

Eigen::MatrixXd sample_cfusn(const CfusnParams& params, int n, std::uint64_t seed) {
  return sample_convolution(params, std::nullopt, n, seed);
}

Eigen::MatrixXd sample_cfust(const CfustParams& params, int n, std::uint64_t seed) {
  return sample_convolution(params.cfusn, params.nu, n, seed);
}

}  // namespace skewfa
