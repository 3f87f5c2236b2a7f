#include "skewfa/model.hpp"

#include <cmath>
#include <stdexcept>

#include "skewfa/errors.hpp"

namespace skewfa {

namespace {
const double kHalfNormalMean = std::sqrt(2.0 / M_PI);
}

std::string to_string(Formulation f) {
  switch (f) {
    case Formulation::SE: return "se";
    case Formulation::SF: return "sf";
    case Formulation::SFE: return "sfe";
  }
  return "?";
}

std::string to_string(Family f) {
  return f == Family::CFUSN ? "cfusn" : "cfust";
}

Formulation formulation_from_string(const std::string& s) {
  if (s == "se" || s == "SE") return Formulation::SE;
  if (s == "sf" || s == "SF") return Formulation::SF;
  if (s == "sfe" || s == "SFE") return Formulation::SFE;
  throw std::invalid_argument("unknown formulation '" + s + "' (expected se, sf or sfe)");
}

Family family_from_string(const std::string& s) {
  if (s == "cfusn" || s == "CFUSN") return Family::CFUSN;
  if (s == "cfust" || s == "CFUST") return Family::CFUST;
  throw std::invalid_argument("unknown family '" + s + "' (expected cfusn or cfust)");
}

void ModelSpec::validate() const {
  if (g < 1) throw ShapeError("ModelSpec: g must be >= 1");
  if (p < 1) throw ShapeError("ModelSpec: p must be >= 1");
  if (q < 1 || q >= p) throw ShapeError("ModelSpec: need 1 <= q < p");
  if (r < 0 || s < 0) throw ShapeError("ModelSpec: r, s must be >= 0");
  if (formulation == Formulation::SFE) {
    if (r < 1 || s < 1) throw ShapeError("ModelSpec: SFE needs r >= 1 and s >= 1");
  } else if (s != 0) {
    throw ShapeError("ModelSpec: s must be 0 unless formulation is SFE");
  }
}

void MixtureParams::validate(const ModelSpec& spec) const {
  spec.validate();
  if (static_cast<int>(components.size()) != spec.g)
    throw ShapeError("MixtureParams: component count differs from spec.g");
  double pi_sum = 0.0;
  for (const auto& c : components) {
    if (!(c.pi > 0.0 && c.pi <= 1.0))
      throw ShapeError("MixtureParams: pi must lie in (0,1]");
    pi_sum += c.pi;
    if (c.mu.size() != spec.p) throw ShapeError("MixtureParams: mu must have length p");
    if (c.B.rows() != spec.p || c.B.cols() != spec.q)
      throw ShapeError("MixtureParams: B must be p x q");
    if (c.d.size() != spec.p) throw ShapeError("MixtureParams: d must have length p");
    if ((c.d.array() <= 0.0).any())
      throw ShapeError("MixtureParams: D entries must be > 0");
    const int rows0 = spec.formulation == Formulation::SE ? spec.p : spec.q;
    if (c.delta0.rows() != rows0 || c.delta0.cols() != spec.r)
      throw ShapeError("MixtureParams: delta0 has wrong shape");
    if (spec.formulation == Formulation::SFE) {
      if (c.delta1.rows() != spec.p || c.delta1.cols() != spec.s)
        throw ShapeError("MixtureParams: delta1 must be p x s");
    } else if (c.delta1.size() != 0) {
      throw ShapeError("MixtureParams: delta1 present outside SFE");
    }
    if (spec.family == Family::CFUST) {
      if (!c.nu || !(*c.nu > 0.0))
        throw ShapeError("MixtureParams: CFUST needs nu > 0 per component");
    } else if (c.nu) {
      throw ShapeError("MixtureParams: nu present under CFUSN family");
    }
  }
  if (std::fabs(pi_sum - 1.0) > 1e-12)
    throw ShapeError("MixtureParams: mixing proportions must sum to 1");
}

MarginalLaw marginal_law(const ModelSpec& spec, const ComponentParams& comp) {
  spec.validate();
  MarginalLaw law;
  law.mu = comp.mu;
  law.sigma = comp.sigma();
  switch (spec.formulation) {
    case Formulation::SE:
      law.delta = comp.delta0;
      break;
    case Formulation::SF:
      law.delta = comp.B * comp.delta0;
      break;
    case Formulation::SFE:
      law.delta.resize(spec.p, spec.r + spec.s);
      law.delta << comp.B * comp.delta0, comp.delta1;
      break;
  }
  if (spec.family == Family::CFUST) law.nu = comp.nu;
  return law;
}

MarginalKernel marginal_kernel(const ModelSpec& spec, const ComponentParams& comp) {
  const MarginalLaw law = marginal_law(spec, comp);
  return MarginalKernel(law.mu, law.sigma, law.delta, law.nu);
}

ModelMoments model_moments(const ModelSpec& spec, const ComponentParams& comp) {
  spec.validate();
  if (spec.family != Family::CFUSN)
    throw std::invalid_argument(
        "model_moments: closed-form moments are available for the CFUSN family only");
  const double k = kHalfNormalMean;
  const double v = 1.0 - 2.0 / M_PI;
  const Eigen::MatrixXd D = comp.D();
  const Eigen::MatrixXd BBt = comp.B * comp.B.transpose();
  ModelMoments mm;
  mm.mean_x = Eigen::VectorXd::Zero(spec.q);
  mm.cov_x = Eigen::MatrixXd::Identity(spec.q, spec.q);
  mm.mean_e = Eigen::VectorXd::Zero(spec.p);
  mm.cov_e = D;
  switch (spec.formulation) {
    case Formulation::SE: {
      const Eigen::VectorXd off = k * comp.delta0 * Eigen::VectorXd::Ones(spec.r);
      mm.mean_e = off;
      mm.cov_e = D + v * comp.delta0 * comp.delta0.transpose();
      mm.mean_y = comp.mu + off;
      mm.cov_y = BBt + mm.cov_e;
      break;
    }
    case Formulation::SF: {
      const Eigen::VectorXd fx = k * comp.delta0 * Eigen::VectorXd::Ones(spec.r);
      mm.mean_x = fx;
      mm.cov_x = Eigen::MatrixXd::Identity(spec.q, spec.q) +
                 v * comp.delta0 * comp.delta0.transpose();
      mm.mean_y = comp.mu + comp.B * fx;
      mm.cov_y = comp.B * mm.cov_x * comp.B.transpose() + D;
      break;
    }
    case Formulation::SFE: {
      const Eigen::VectorXd fx = k * comp.delta0 * Eigen::VectorXd::Ones(spec.r);
      const Eigen::VectorXd fe = k * comp.delta1 * Eigen::VectorXd::Ones(spec.s);
      mm.mean_x = fx;
      mm.cov_x = Eigen::MatrixXd::Identity(spec.q, spec.q) +
                 v * comp.delta0 * comp.delta0.transpose();
      mm.mean_e = fe;
      mm.cov_e = D + v * comp.delta1 * comp.delta1.transpose();
      mm.mean_y = comp.mu + comp.B * fx + fe;
      mm.cov_y = comp.B * mm.cov_x * comp.B.transpose() + mm.cov_e;
      break;
    }
  }
  return mm;
}

NormalizedFactors normalize_factors(const ModelSpec& spec,
                                    const ComponentParams& comp) {
  spec.validate();
  if (spec.formulation != Formulation::SF || spec.family != Family::CFUSN)
    throw std::invalid_argument(
        "normalize_factors: defined for the SF formulation under CFUSN only");
  const double v = 1.0 - 2.0 / M_PI;
  const Eigen::MatrixXd A =
      Eigen::MatrixXd::Identity(spec.q, spec.q) +
      v * comp.delta0 * comp.delta0.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  if (es.info() != Eigen::Success)
    throw DecompositionError("normalize_factors: eigendecomposition failed");
  const Eigen::MatrixXd a_half =
      es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
      es.eigenvectors().transpose();
  const Eigen::MatrixXd a_half_inv =
      es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
      es.eigenvectors().transpose();

  // X' = A^{-1/2} (X - sqrt(2/pi) Delta 1), so E(X') = 0, cov(X') = I and
  // Y = (mu + sqrt(2/pi) B Delta 1) + (B A^{1/2}) X' + e.
  const Eigen::VectorXd b = kHalfNormalMean * comp.delta0 * Eigen::VectorXd::Ones(spec.r);
  NormalizedFactors out;
  out.component = comp;
  out.component.mu = comp.mu + comp.B * b;
  out.component.B = comp.B * a_half;
  out.component.delta0 = a_half_inv * comp.delta0;
  out.factor_law.mu = -a_half_inv * b;
  out.factor_law.sigma = a_half_inv * a_half_inv.transpose();
  out.factor_law.delta = out.component.delta0;
  return out;
}

long param_count(const ModelSpec& spec) {
  spec.validate();
  const long p = spec.p, q = spec.q, r = spec.r, s = spec.s;
  long skew = 0;
  switch (spec.formulation) {
    case Formulation::SE: skew = p * r; break;
    case Formulation::SF: skew = q * r; break;
    case Formulation::SFE: skew = q * r + p * s; break;
  }
  long per = p + (p * q - q * (q - 1) / 2) + p + skew;
  if (spec.family == Family::CFUST) per += 1;
  return spec.g * per + (spec.g - 1);
}

Eigen::MatrixXd component_log_densities(const Dataset& data, const ModelSpec& spec,
                                        const MixtureParams& params) {
  params.validate(spec);
  if (data.p() != spec.p)
    throw ShapeError("loglik: data column count differs from spec.p");
  const int n = data.n();
  Eigen::MatrixXd logd(n, spec.g);
  for (int i = 0; i < spec.g; ++i) {
    const MarginalKernel kernel = marginal_kernel(spec, params.components[i]);
    for (int j = 0; j < n; ++j)
      logd(j, i) = kernel.log_density(data.y.row(j).transpose());
  }
  return logd;
}

double loglik(const Dataset& data, const ModelSpec& spec,
              const MixtureParams& params) {
  const Eigen::MatrixXd logd = component_log_densities(data, spec, params);
  double total = 0.0;
  for (int j = 0; j < data.n(); ++j) {
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < spec.g; ++i)
      best = std::max(best, logd(j, i) + std::log(params.components[i].pi));
    if (std::isinf(best)) return -std::numeric_limits<double>::infinity();
    double acc = 0.0;
    for (int i = 0; i < spec.g; ++i)
      acc += std::exp(logd(j, i) + std::log(params.components[i].pi) - best);
    total += best + std::log(acc);
  }
  return total;
}

}  // namespace skewfa
