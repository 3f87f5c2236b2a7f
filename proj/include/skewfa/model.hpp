#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "skewfa/distributions.hpp"

namespace skewfa {

enum class Formulation { SE, SF, SFE };
enum class Family { CFUSN, CFUST };

std::string to_string(Formulation f);
std::string to_string(Family f);
Formulation formulation_from_string(const std::string& s);
Family family_from_string(const std::string& s);

/// Which skew factor model is being fitted and at what sizes.
///  g components, p observed dimensions, q latent factors,
///  r factor-side skew dimensions (error-side for SE), s error-side skew
///  dimensions (SFE only).
struct ModelSpec {
  Formulation formulation = Formulation::SE;
  Family family = Family::CFUSN;
  int g = 1;
  int p = 1;
  int q = 1;
  int r = 1;
  int s = 0;

  void validate() const;
  /// Columns of the marginal skewness matrix: r for SE/SF, r+s for SFE.
  int marginal_skew_cols() const {
    return formulation == Formulation::SFE ? r + s : r;
  }
};

/// One mixture component. delta0 is the skewness block on the errors for SE
/// (p x r) and on the factors for SF/SFE (q x r); delta1 is the SFE
/// error-side block (p x s, zero columns otherwise). nu is present only for
/// the CFUST family.
struct ComponentParams {
  double pi = 1.0;
  Eigen::VectorXd mu;
  Eigen::MatrixXd B;
  Eigen::VectorXd d;
  Eigen::MatrixXd delta0;
  Eigen::MatrixXd delta1;
  std::optional<double> nu;

  Eigen::MatrixXd D() const { return d.asDiagonal(); }
  Eigen::MatrixXd sigma() const {
    return B * B.transpose() + Eigen::MatrixXd(d.asDiagonal());
  }
};

struct MixtureParams {
  std::vector<ComponentParams> components;
  void validate(const ModelSpec& spec) const;
};

/// Closed-form marginal CFUSN/CFUST law of one component.
struct MarginalLaw {
  Eigen::VectorXd mu;
  Eigen::MatrixXd sigma;   // B B^T + D
  Eigen::MatrixXd delta;   // SE: delta0; SF: B delta0; SFE: [B delta0, delta1]
  std::optional<double> nu;
};

MarginalLaw marginal_law(const ModelSpec& spec, const ComponentParams& comp);

MarginalKernel marginal_kernel(const ModelSpec& spec, const ComponentParams& comp);

/// First and second moments of Y, the factors X and the errors e under the
/// CFUSN family (no closed forms are available for CFUST; requesting them
/// throws std::invalid_argument).
struct ModelMoments {
  Eigen::VectorXd mean_y, mean_x, mean_e;
  Eigen::MatrixXd cov_y, cov_x, cov_e;
};

ModelMoments model_moments(const ModelSpec& spec, const ComponentParams& comp);

/// SF/CFUSN reparametrization making E(X) = 0 and cov(X) = I_q. The
/// component absorbs the factor mean and scale into (mu, B); factor_law is
/// the resulting non-canonical CFUSN law of the normalized factors.
struct NormalizedFactors {
  ComponentParams component;
  CfusnParams factor_law;
};

NormalizedFactors normalize_factors(const ModelSpec& spec,
                                    const ComponentParams& comp);

/// Free parameters: per component p (mu) + pq - q(q-1)/2 (B) + p (D) +
/// skew blocks (SE: pr, SF: qr, SFE: qr + ps) + 1 for nu under CFUST;
/// plus g - 1 mixing proportions.
long param_count(const ModelSpec& spec);

struct Dataset {
  Eigen::MatrixXd y;
  std::vector<std::string> columns;
  int n() const { return static_cast<int>(y.rows()); }
  int p() const { return static_cast<int>(y.cols()); }
};

/// Observed-data log likelihood, sum_j log sum_i pi_i f_i(y_j), evaluated
/// with log-sum-exp. Returns -inf only if some row has zero density in
/// every component.
double loglik(const Dataset& data, const ModelSpec& spec,
              const MixtureParams& params);

/// Per-row per-component log densities (n x g), the building block of
/// loglik and of the responsibilities.
Eigen::MatrixXd component_log_densities(const Dataset& data, const ModelSpec& spec,
                                        const MixtureParams& params);

// JSON round trip for {spec, params}; exact for all finite values.
std::string params_to_json(const ModelSpec& spec, const MixtureParams& params,
                           int indent = 2);
std::pair<ModelSpec, MixtureParams> params_from_json(const std::string& text);

}  // namespace skewfa
