#include "spectral_range/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "spectral_range/errors.hpp"

namespace spectral_range {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

ScalingVector normalized(const ScalingVector& x) { return x / x.maxCoeff(); }

bool equal_means(double mu, double nu) { return std::abs(mu - nu) <= 1e-10 * mu; }

}  // namespace

ScalingVector visualizing_vector(const Matrix& a) {
  const CycleMeanReport means = cycle_means(a);
  if (!means.has_cycle) throw std::invalid_argument("visualization: matrix has no cycle");
  const MaxPlusMatrix star = kleene_star_maxplus(log_normalized(a, means.mu));
  // x_i = sum_j exp(star_ij), evaluated as a log-sum-exp.
  const Eigen::Index n = a.rows();
  Vector log_x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double top = star.row(i).maxCoeff();
    double sum = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
      if (star(i, j) > kNegInf) sum += std::exp(star(i, j) - top);
    log_x(i) = top + std::log(sum);
  }
  return (log_x.array() - log_x.maxCoeff()).exp().matrix();
}

std::string check_strict_visualization(const Matrix& a, const ScalingVector& x, Level level) {
  if (x.size() != a.rows()) return "scaling vector has wrong length";
  if ((x.array() <= 0.0).any() || !x.allFinite()) return "scaling vector is not strictly positive";
  const CycleMeanReport means = cycle_means(a);
  if (!means.has_cycle) return "matrix has no cycle";
  const CriticalGraph crit = critical_graph(a, level);
  const double bound = level == Level::Max ? means.mu : means.nu;
  std::ostringstream problem;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0.0) continue;
      const double forward = a(i, j) * x(j) / (bound * x(i));
      const double ratio = level == Level::Max ? forward : 1.0 / forward;
      const bool critical = crit.has_edge(static_cast<int>(i), static_cast<int>(j));
      if (critical && std::abs(ratio - 1.0) > kTightTolerance) {
        problem << "critical edge (" << i + 1 << "," << j + 1 << ") not tight, ratio " << ratio;
        return problem.str();
      }
      if (!critical && !(ratio < 1.0 - kSlackMargin)) {
        problem << "non-critical edge (" << i + 1 << "," << j + 1 << ") not slack, ratio " << ratio;
        return problem.str();
      }
    }
  return {};
}

ScalingVector strict_visualizing_vector(const Matrix& a) {
  require_nonnegative(a);
  const ScalingVector x = visualizing_vector(a);
  if (auto problem = check_strict_visualization(a, x, Level::Max); !problem.empty())
    throw ConvergenceError("strict visualization failed verification: " + problem);
  return x;
}

ScalingVector strict_antivisualizing_vector(const Matrix& a) {
  require_nonnegative(a);
  const ScalingVector inverse_vector = visualizing_vector(hadamard_inverse(a));
  const ScalingVector x = normalized(inverse_vector.cwiseInverse());
  if (auto problem = check_strict_visualization(a, x, Level::Min); !problem.empty())
    throw ConvergenceError("strict antivisualization failed verification: " + problem);
  return x;
}

RowInteraction row_interaction(const Matrix& a, const ScalingVector& x, Level level) {
  require_nonnegative(a);
  const Matrix b = aux(a).dense();
  if (auto problem = check_strict_visualization(b, x, level); !problem.empty())
    throw std::invalid_argument("row_interaction: not a strict (anti)visualizing vector of aux(A): " + problem);
  const CycleMeanReport means = cycle_means(b);
  RowInteraction result;
  result.level = level;
  result.bound = level == Level::Max ? means.mu : means.nu;
  const CriticalGraph crit = critical_graph(b, level);
  const Vector ax = a * x;
  const Eigen::Index n = a.rows();
  result.ratio = ax.cwiseQuotient(result.bound * x);
  result.tight.assign(n, 0);
  result.strictly_critical.assign(n, 0);
  for (int v : crit.strict_nodes) result.strictly_critical[v] = 1;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = result.ratio(i);
    const bool has_edges = (a.row(i).array() > 0.0).any();
    result.tight[i] = has_edges && std::abs(r - 1.0) <= kTightTolerance;
    if (has_edges && level == Level::Max && r > 1.0 + kTightTolerance)
      throw std::logic_error("row_interaction: (Ax)_i exceeds mu(B) x_i at row " + std::to_string(i + 1));
    if (has_edges && level == Level::Min && r < 1.0 - kTightTolerance)
      throw std::logic_error("row_interaction: (Ax)_i below nu(B) x_i at row " + std::to_string(i + 1));
    if (result.tight[i] != result.strictly_critical[i])
      throw std::logic_error("row_interaction: row " + std::to_string(i + 1) +
                             (result.tight[i] ? " is tight but not strictly critical"
                                              : " is strictly critical but slack"));
  }
  return result;
}

AevddScalings aevdd_scalings(const Matrix& a) {
  require_nonnegative(a);
  if (!is_irreducible(a)) throw std::invalid_argument("aevdd_scalings: matrix is reducible");
  const Matrix b = aux(a).dense();
  const CycleMeanReport means = cycle_means(b);
  AevddScalings result;
  result.mu = means.mu;
  result.nu = means.nu;
  result.rho = perron_root(a);
  if (equal_means(means.mu, means.nu)) {
    result.scaling_case = ScalingCase::Equal;
    result.substochastic_scaling = visualizing_vector(b);
    result.superstochastic_scaling = result.substochastic_scaling;
  } else {
    result.scaling_case = ScalingCase::Strict;
    result.substochastic_scaling = strict_visualizing_vector(b);
    result.superstochastic_scaling = strict_antivisualizing_vector(b);
  }
  return result;
}

ScalingVector sum_visualize(const Matrix& a, double level, const SumVisualizeOptions& options) {
  require_nonnegative(a);
  if (!is_irreducible(a)) throw std::invalid_argument("sum_visualize: matrix is reducible");
  if (!(level > 0.0) || !std::isfinite(level)) throw std::invalid_argument("sum_visualize: level must be positive");
  const double mu = cycle_means(a).mu;
  const double rho = perron_root(a);
  if (level < mu * (1.0 - kLevelRangeTolerance) || level > rho * (1.0 + kLevelRangeTolerance)) {
    std::ostringstream detail;
    detail.precision(17);
    detail << "level " << level << " outside [mu, rho] = [" << mu << ", " << rho << "]";
    throw InfeasibleError(Clause::SumVisualizationRange, detail.str());
  }

  // Phase 1: a visualization of A / level has every entry <= mu(A) / level <= 1.
  const Matrix scaled = a / level;
  const ScalingVector x = visualizing_vector(scaled);
  const Matrix g = diagonal_similarity(scaled, x);

  // Phase 2: y <- min(y, G y) from the all-ones vector.
  Vector y = Vector::Ones(a.rows());
  if (options.observer) options.observer(y);
  for (long it = 0; it < options.max_iterations; ++it) {
    const Vector next = y.cwiseMin(g * y);
    const double step = (y - next).cwiseAbs().maxCoeff();
    y = next;
    if (options.observer) options.observer(y);
    if (step < options.step_tolerance) break;
  }

  const ScalingVector d = normalized(x.cwiseProduct(y));
  const Matrix c = diagonal_similarity(a, d);
  const double tol = options.verify_tolerance;
  if (!d.allFinite() || (d.array() <= 0.0).any() || c.maxCoeff() > level * (1.0 + tol) ||
      c.rowwise().sum().minCoeff() < level * (1.0 - tol))
    throw ConvergenceError("sum_visualize: fixed-point iteration did not reach an a-sum visualization");
  return d;
}

ScalingVector sum_visualize_inverse(const Matrix& a, double level, const SumVisualizeOptions& options) {
  require_nonnegative(a);
  if (!is_irreducible(a)) throw std::invalid_argument("sum_visualize_inverse: matrix is reducible");
  if (!(level > 0.0) || !std::isfinite(level))
    throw std::invalid_argument("sum_visualize_inverse: level must be positive");
  const Matrix inverse = hadamard_inverse(a);
  const double lower = 1.0 / cycle_means(a).nu;
  const double upper = perron_root(inverse);
  const double target = 1.0 / level;
  if (target < lower * (1.0 - kLevelRangeTolerance) || target > upper * (1.0 + kLevelRangeTolerance)) {
    std::ostringstream detail;
    detail.precision(17);
    detail << "1/level = " << target << " outside [1/nu, rho(A^[-1])] = [" << lower << ", " << upper << "]";
    throw InfeasibleError(Clause::InverseSumVisualizationRange, detail.str());
  }
  const ScalingVector x = normalized(sum_visualize(inverse, target, options).cwiseInverse());

  const Matrix c = diagonal_similarity(a, x);
  const double tol = options.verify_tolerance;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0.0) continue;
      if (c(i, j) < level * (1.0 - tol))
        throw ConvergenceError("sum_visualize_inverse: scaled entry below level");
      sum += level / c(i, j);
    }
    if (sum < 1.0 - tol) throw ConvergenceError("sum_visualize_inverse: reciprocal row sum below 1");
  }
  return x;
}

}  // namespace spectral_range
