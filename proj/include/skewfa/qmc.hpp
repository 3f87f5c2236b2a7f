#pragma once

#include <Eigen/Dense>
#include <cstdint>

// Randomized quasi-Monte Carlo evaluation of probabilities and moments of a
// central multivariate t (or normal) restricted to a lower-bounded orthant
// region. This is the shared machinery behind mvt_cdf and trunc_t_moments
// for dimensions where no closed form is available. The integration uses
// Genz-style sequential conditioning on a shifted Kronecker lattice; the
// shifts are drawn from a fixed internal seed so results are deterministic.

namespace skewfa {

struct QmcOptions {
  double abs_tol = 1e-6;        // target on the probability estimate
  int shifts = 8;               // independent lattice shifts
  int initial_points = 256;     // points per shift at the first level
  int max_points = 1 << 16;     // points per shift at the last level
  std::uint64_t seed = 0x5851f42d4c957f2dULL;
};

struct OrthantResult {
  double prob = 0.0;            // P(T >= lower, componentwise)
  double prob_se = 0.0;         // standard error over lattice shifts
  Eigen::VectorXd mean;         // E[T | region] (when moments requested)
  Eigen::MatrixXd second_moment;  // E[T T^T | region]
};

/// T ~ t_m(0, scale, dof) with dof = +inf meaning the normal case.
/// Computes P(T >= lower) and, if want_moments, the conditional first and
/// second moments over the region. Throws DecompositionError when scale is
/// not SPD and DegenerateTruncationError when want_moments is set but the
/// region mass falls below 1e-12.
OrthantResult lower_orthant_t(const Eigen::VectorXd& lower,
                              const Eigen::MatrixXd& scale, double dof,
                              const QmcOptions& opt, bool want_moments);

/// Deterministic 1-D quadrature for the bivariate case:
/// P(T1 >= l1, T2 >= l2) for a central bivariate t (dof = +inf for normal)
/// with correlation rho. Absolute accuracy ~1e-10.
double lower_orthant_prob_2d(double l1, double l2, double rho, double dof);

}  // namespace skewfa
