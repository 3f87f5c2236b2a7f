#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <optional>

#include "skewfa/qmc.hpp"
#include "skewfa/truncated.hpp"

namespace skewfa {

/// Parameters of the canonical fundamental skew normal law
/// Y = mu + Delta |U| + V,  U ~ N_r(0, I_r) independent of V ~ N_p(0, Sigma).
struct CfusnParams {
  Eigen::VectorXd mu;     // length p
  Eigen::MatrixXd sigma;  // p x p, SPD
  Eigen::MatrixXd delta;  // p x r
  void validate() const;
};

/// CFUST: the same convolution scaled by 1/sqrt(w), w ~ gamma(nu/2, nu/2).
struct CfustParams {
  CfusnParams cfusn;
  double nu = 0.0;
  void validate() const;
};

/// Shared evaluation kernel for the CFUSN/CFUST density and the conditional
/// expectations of the fitter. Holds the factorized quantities
///   Omega = Sigma + Delta Delta^T,
///   Lambda = I_r - Delta^T Omega^{-1} Delta,
///   q(y) = Delta^T Omega^{-1} (y - mu),
///   d(y) = (y - mu)^T Omega^{-1} (y - mu),
/// so the density path and the E-step path cannot drift apart. Columns of
/// Delta that are exactly zero contribute nothing to the law and are dropped
/// internally; the reported q/moment blocks for dropped columns are zero.
class MarginalKernel {
 public:
  /// nu_opt empty selects the CFUSN (normal) family.
  MarginalKernel(const Eigen::VectorXd& mu, const Eigen::MatrixXd& sigma,
                 const Eigen::MatrixXd& delta, std::optional<double> nu_opt);

  int p() const { return static_cast<int>(mu_.size()); }
  int r() const { return static_cast<int>(delta_full_.cols()); }
  bool is_t() const { return nu_.has_value(); }
  double nu() const { return *nu_; }
  const Eigen::MatrixXd& omega() const { return omega_; }
  const Eigen::MatrixXd& lambda_reduced() const { return lambda_; }

  double mahalanobis(const Eigen::VectorXd& y) const;        // d(y)
  Eigen::VectorXd skew_shift(const Eigen::VectorXd& y) const;  // q(y), reduced dims
  double log_density(const Eigen::VectorXd& y, const QmcOptions& opt = {}) const;

  /// Conditional quantities the first AECM cycle needs for one observation:
  /// log f(y), E[w|y], E[w|U| |y] and E[w|U||U|^T |y] (full r-dimensional,
  /// zero rows/columns in dropped positions).
  struct EStep {
    double log_density;
    double w;
    Eigen::VectorXd u;
    Eigen::MatrixXd u2;
  };
  EStep estep(const Eigen::VectorXd& y, const QmcOptions& cdf_opt,
              const QmcOptions& moment_opt) const;

 private:
  double log_orthant(const Eigen::VectorXd& shifted_center,
                     const Eigen::MatrixXd& scale, double dof,
                     const QmcOptions& opt) const;

  Eigen::VectorXd mu_;
  Eigen::MatrixXd sigma_;
  Eigen::MatrixXd delta_full_;
  std::optional<double> nu_;
  std::vector<int> active_;     // columns of delta kept
  Eigen::MatrixXd delta_;       // reduced, p x m
  Eigen::MatrixXd omega_;       // Sigma + Delta Delta^T (reduced = full)
  Eigen::LLT<Eigen::MatrixXd> omega_llt_;
  Eigen::MatrixXd omega_inv_delta_;  // Omega^{-1} Delta (reduced)
  Eigen::MatrixXd lambda_;           // reduced m x m
  double log_det_omega_ = 0.0;
};

double cfusn_log_density(const Eigen::VectorXd& y, const CfusnParams& params);
double cfusn_density(const Eigen::VectorXd& y, const CfusnParams& params);
double cfust_log_density(const Eigen::VectorXd& y, const CfustParams& params);
double cfust_density(const Eigen::VectorXd& y, const CfustParams& params);

/// n i.i.d. rows drawn through the convolution representation.
Eigen::MatrixXd sample_cfusn(const CfusnParams& params, int n, std::uint64_t seed);
Eigen::MatrixXd sample_cfust(const CfustParams& params, int n, std::uint64_t seed);

}  // namespace skewfa
