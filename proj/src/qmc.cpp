#include "skewfa/qmc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <vector>

#include "skewfa/errors.hpp"
#include "skewfa/special.hpp"

namespace skewfa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNormalDofCutoff = 1e8;  // treat dof above this as normal

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double uniform01(std::uint64_t& state) {
  return (splitmix64(state) >> 11) * 0x1.0p-53;
}

// sqrt(chisq_quantile(u, dof) / dof) tabulated against v = Phi^{-1}(u) on a
// uniform grid; cubic interpolation of log s. One table per dof, cached.
class ChiSqrtTable {
 public:
  explicit ChiSqrtTable(double dof) {
    logs_.resize(kN);
    for (int i = 0; i < kN; ++i) {
      const double v = kLo + i * step();
      const double u = norm_cdf(v);
      logs_[i] = 0.5 * std::log(chi2_quantile(u, dof) / dof);
    }
  }

  double eval(double u) const {
    double v = norm_quantile(std::min(std::max(u, 1e-16), 1.0 - 1e-16));
    v = std::min(std::max(v, kLo), kHi);
    const double t = (v - kLo) / step();
    int i = static_cast<int>(t);
    i = std::min(std::max(i, 1), kN - 3);
    const double x = t - i;
    const double y0 = logs_[i - 1], y1 = logs_[i], y2 = logs_[i + 1], y3 = logs_[i + 2];
    const double m1 = 0.5 * (y2 - y0);
    const double m2 = 0.5 * (y3 - y1);
    const double x2 = x * x, x3 = x2 * x;
    const double val = (2 * x3 - 3 * x2 + 1) * y1 + (x3 - 2 * x2 + x) * m1 +
                       (-2 * x3 + 3 * x2) * y2 + (x3 - x2) * m2;
    return std::exp(val);
  }

 private:
  static constexpr int kN = 513;
  static constexpr double kLo = -8.5, kHi = 8.5;
  static double step() { return (kHi - kLo) / (kN - 1); }
  std::vector<double> logs_;
};

std::shared_ptr<const ChiSqrtTable> chi_table(double dof) {
  static std::mutex mu;
  static std::map<double, std::shared_ptr<const ChiSqrtTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(dof);
  if (it != cache.end()) return it->second;
  if (cache.size() > 256) cache.clear();
  auto table = std::make_shared<const ChiSqrtTable>(dof);
  cache.emplace(dof, table);
  return table;
}

// frac parts of sqrt(prime): Kronecker lattice generators.
const double kGenerators[] = {
    0.41421356237309515, 0.7320508075688772,  0.2360679774997896,
    0.6457513110645907,  0.3166247903553998,  0.6055512754639891,
    0.1231056256176605,  0.3588989435406740,  0.7958315233127191,
    0.3851648071345040,  0.5677643628300215,  0.0827625302982193};

struct Accumulator {
  double sumw = 0.0;
  Eigen::VectorXd sumwy;
  Eigen::MatrixXd sumwyy;
  long count = 0;
};

}  // namespace

OrthantResult lower_orthant_t(const Eigen::VectorXd& lower,
                              const Eigen::MatrixXd& scale, double dof,
                              const QmcOptions& opt, bool want_moments) {
  const int m = static_cast<int>(lower.size());
  if (scale.rows() != m || scale.cols() != m)
    throw ShapeError("lower_orthant_t: scale dimension mismatch");
  if (m == 0) {
    OrthantResult res;
    res.prob = 1.0;
    return res;
  }
  const bool is_t = dof < kNormalDofCutoff;
  if (is_t && !(dof > 0.0)) throw std::domain_error("lower_orthant_t: dof must be > 0");

  // Standardize to a correlation matrix and order the variables so the most
  // restrictive bounds are conditioned on first.
  Eigen::VectorXd sd = scale.diagonal().cwiseSqrt();
  Eigen::VectorXd lstd = lower.cwiseQuotient(sd);
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(),
            [&](int a, int b) { return lstd[a] > lstd[b]; });
  Eigen::MatrixXd corr(m, m);
  Eigen::VectorXd lb(m);
  for (int i = 0; i < m; ++i) {
    lb[i] = lstd[perm[i]];
    for (int j = 0; j < m; ++j)
      corr(i, j) = scale(perm[i], perm[j]) / (sd[perm[i]] * sd[perm[j]]);
  }
  Eigen::LLT<Eigen::MatrixXd> llt(corr);
  if (llt.info() != Eigen::Success)
    throw DecompositionError("lower_orthant_t: scale matrix is not SPD");
  const Eigen::MatrixXd L = llt.matrixL();

  std::shared_ptr<const ChiSqrtTable> table;
  if (is_t) table = chi_table(dof);

  const int dim = (is_t ? 1 : 0) + (want_moments ? m : m - 1);
  const int nshift = std::max(2, opt.shifts);
  std::uint64_t seed_state = opt.seed;
  std::vector<std::vector<double>> shift(nshift, std::vector<double>(dim));
  for (auto& s : shift)
    for (auto& v : s) v = uniform01(seed_state);

  std::vector<Accumulator> acc(nshift);
  for (auto& a : acc) {
    if (want_moments) {
      a.sumwy = Eigen::VectorXd::Zero(m);
      a.sumwyy = Eigen::MatrixXd::Zero(m, m);
    }
  }

  Eigen::VectorXd e(m), y(m), z(m);
  double prob = 0.0, prob_se = 0.0;
  long npts = opt.initial_points;
  while (true) {
    for (int s = 0; s < nshift; ++s) {
      Accumulator& a = acc[s];
      for (long k = a.count; k < npts; ++k) {
        // Shifted Kronecker point with the usual reflection.
        double sf = 1.0;
        int coord = 0;
        auto next_coord = [&]() {
          double x = std::fmod((k + 1) * kGenerators[coord] + shift[s][coord], 1.0);
          ++coord;
          return std::fabs(2.0 * x - 1.0);
        };
        if (is_t) sf = table->eval(next_coord());
        double weight = 1.0;
        for (int i = 0; i < m && weight > 0.0; ++i) {
          double num = lb[i] * sf;
          for (int j = 0; j < i; ++j) num -= L(i, j) * e[j];
          const double li = num / L(i, i);
          const double di = norm_cdf(li);
          const double pi = 1.0 - di;
          weight *= pi;
          if (weight <= 0.0) {
            weight = 0.0;
            break;
          }
          if (i < m - 1 || want_moments) {
            const double frac = di + next_coord() * pi;
            e[i] = norm_quantile(std::min(std::max(frac, 1e-16), 1.0 - 1e-16));
          }
        }
        a.sumw += weight;
        if (want_moments && weight > 0.0) {
          z.noalias() = L * e;
          for (int i = 0; i < m; ++i) y[perm[i]] = z[i] / sf * sd[perm[i]];
          a.sumwy.noalias() += weight * y;
          a.sumwyy.noalias() += weight * y * y.transpose();
        }
      }
      a.count = npts;
    }
    double mean = 0.0, var = 0.0;
    for (const auto& a : acc) mean += a.sumw / a.count;
    mean /= nshift;
    for (const auto& a : acc) {
      const double d = a.sumw / a.count - mean;
      var += d * d;
    }
    var /= nshift * (nshift - 1);
    prob = mean;
    prob_se = std::sqrt(var);
    const double target = opt.abs_tol;
    if (3.5 * prob_se <= target || npts >= opt.max_points) break;
    npts *= 2;
  }

  OrthantResult res;
  res.prob = std::min(std::max(prob, 0.0), 1.0);
  res.prob_se = prob_se;
  if (want_moments) {
    if (res.prob < 1e-12)
      throw DegenerateTruncationError(
          "lower_orthant_t: truncation region has negligible mass");
    double tw = 0.0;
    Eigen::VectorXd twy = Eigen::VectorXd::Zero(m);
    Eigen::MatrixXd twyy = Eigen::MatrixXd::Zero(m, m);
    for (const auto& a : acc) {
      tw += a.sumw;
      twy += a.sumwy;
      twyy += a.sumwyy;
    }
    res.mean = twy / tw;
    res.second_moment = twyy / tw;
    res.second_moment = 0.5 * (res.second_moment + res.second_moment.transpose()).eval();
  }
  return res;
}

namespace {

// Adaptive Gauss-Kronrod 7-15 on [a,b].
const double kKronrodX[8] = {0.0,
                             0.2077849550078985,
                             0.4058451513773972,
                             0.5860872354676911,
                             0.7415311855993945,
                             0.8648644233597691,
                             0.9491079123427585,
                             0.9914553711208126};
const double kKronrodW[8] = {0.2094821410847278, 0.2044329400752989,
                             0.1903505780647854, 0.1690047266392679,
                             0.1406532597155259, 0.1047900103222502,
                             0.0630920926299786, 0.0229353220105292};
const double kGaussW[4] = {0.4179591836734694, 0.3818300505051189,
                           0.2797053914892767, 0.1294849661688697};

template <typename F>
void gk15(const F& f, double a, double b, double& value, double& err) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fv[15];
  fv[7] = f(c);
  for (int i = 1; i < 8; ++i) {
    fv[7 - i] = f(c - h * kKronrodX[i]);
    fv[7 + i] = f(c + h * kKronrodX[i]);
  }
  double kres = kKronrodW[0] * fv[7];
  for (int i = 1; i < 8; ++i) kres += kKronrodW[i] * (fv[7 - i] + fv[7 + i]);
  double gres = kGaussW[0] * fv[7];
  for (int i = 1; i < 4; ++i) gres += kGaussW[i] * (fv[7 - 2 * i] + fv[7 + 2 * i]);
  value = kres * h;
  err = std::fabs((kres - gres) * h);
}

template <typename F>
double adaptive_gk(const F& f, double a, double b, double tol, int depth = 0) {
  double value, err;
  gk15(f, a, b, value, err);
  if (err <= tol || depth >= 24) return value;
  const double c = 0.5 * (a + b);
  return adaptive_gk(f, a, c, 0.5 * tol, depth + 1) +
         adaptive_gk(f, c, b, 0.5 * tol, depth + 1);
}

double survival_1d(double x, double dof) {
  if (dof < kNormalDofCutoff) return student_t_cdf(-x, dof);
  return norm_cdf(-x);
}

double pdf_1d(double x, double dof) {
  if (dof < kNormalDofCutoff) return student_t_pdf(x, dof);
  return norm_pdf(x);
}

// Conditional survival P(T2 >= l2 | T1 = t) for a central bivariate t
// (normal when dof = inf) with correlation rho.
double cond_survival(double t, double l2, double rho, double dof) {
  const double denom = std::sqrt(1.0 - rho * rho);
  double arg = (l2 - rho * t) / denom;
  if (dof < kNormalDofCutoff) {
    arg *= std::sqrt((dof + 1.0) / (dof + t * t));
    return student_t_cdf(-arg, dof + 1.0);
  }
  return norm_cdf(-arg);
}

}  // namespace

double lower_orthant_prob_2d(double l1, double l2, double rho, double dof) {
  if (l2 > l1) std::swap(l1, l2);
  if (std::fabs(rho) > 1.0 - 1e-9) {
    // Degenerate correlation: T2 = +/- T1 almost surely.
    if (rho > 0.0) return survival_1d(std::max(l1, l2), dof);
    const double hi = survival_1d(l1, dof);       // P(T1 >= l1)
    const double part = survival_1d(-l2, dof);    // P(T1 > -l2)
    return std::max(0.0, hi - part);
  }
  const double tol = 1e-11;
  if (l1 >= 0.0) {
    // Integrate over t in [l1, inf) with t = l1 + z/(1-z).
    auto f = [&](double zz) {
      if (zz >= 1.0) return 0.0;
      const double t = l1 + zz / (1.0 - zz);
      const double jac = 1.0 / ((1.0 - zz) * (1.0 - zz));
      return pdf_1d(t, dof) * cond_survival(t, l2, rho, dof) * jac;
    };
    return std::min(1.0, std::max(0.0, adaptive_gk(f, 0.0, 1.0, tol)));
  }
  // Complement: P = P(T2 >= l2) - P(T1 < l1, T2 >= l2).
  auto f = [&](double zz) {
    if (zz >= 1.0) return 0.0;
    const double t = l1 - zz / (1.0 - zz);
    const double jac = 1.0 / ((1.0 - zz) * (1.0 - zz));
    return pdf_1d(t, dof) * cond_survival(t, l2, rho, dof) * jac;
  };
  const double tail = adaptive_gk(f, 0.0, 1.0, tol);
  return std::min(1.0, std::max(0.0, survival_1d(l2, dof) - tail));
}

}  // namespace skewfa
