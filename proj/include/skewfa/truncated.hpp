#pragma once

#include <Eigen/Dense>

#include "skewfa/qmc.hpp"

namespace skewfa {

/// Law of a ~ t_m(center, scale, dof) restricted to the positive orthant.
/// dof = +inf selects the truncated multivariate normal.
struct TruncTSpec {
  Eigen::VectorXd center;
  Eigen::MatrixXd scale;
  double dof = 0.0;
};

struct TruncTMoments {
  Eigen::VectorXd mean;           // E[a | a > 0]
  Eigen::MatrixXd second_moment;  // E[a a^T | a > 0]
  double prob = 0.0;              // P(a > 0) under the untruncated law
};

/// First and second moments of the positive-orthant-truncated t.
/// Closed forms when m == 1, the shared QMC stream otherwise. Throws
/// DegenerateTruncationError when the orthant mass is below 1e-12 and
/// std::domain_error when dof makes the requested moment nonexistent
/// (dof <= 1 for the mean, dof <= 2 for second moments).
TruncTMoments trunc_t_moments(const TruncTSpec& spec,
                              const QmcOptions& opt = QmcOptions{});

}  // namespace skewfa
