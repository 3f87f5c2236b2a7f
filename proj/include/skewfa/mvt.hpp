#pragma once

#include <Eigen/Dense>

#include "skewfa/qmc.hpp"

namespace skewfa {

/// P(T <= x componentwise) for a central m-dimensional t distribution with
/// the given SPD scale matrix and dof degrees of freedom (dof = +inf gives
/// the multivariate normal). m = 0 returns 1. Closed forms are used for
/// m <= 1, deterministic quadrature for m == 2, and seeded randomized QMC
/// beyond that, so repeated calls return identical values.
double mvt_cdf(const Eigen::VectorXd& x, const Eigen::MatrixXd& scale,
               double dof, const QmcOptions& opt = QmcOptions{});

/// Multivariate normal CDF, same conventions as mvt_cdf.
double mvn_cdf(const Eigen::VectorXd& x, const Eigen::MatrixXd& sigma,
               const QmcOptions& opt = QmcOptions{});

/// P(T >= lower componentwise) for the same family; the building block the
/// CDF and the truncated-moment engine share.
double lower_orthant_prob(const Eigen::VectorXd& lower,
                          const Eigen::MatrixXd& scale, double dof,
                          const QmcOptions& opt = QmcOptions{});

}  // namespace skewfa
