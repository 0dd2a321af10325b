#pragma once

#include <functional>
#include <vector>

#include "spectral_range/cycle_means.hpp"
#include "spectral_range/errors.hpp"

namespace spectral_range {

/// Positive vector x defining the diagonal similarity C = X^{-1} A X, X = diag(x).
using ScalingVector = Vector;

/// X^{-1} A X.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> diagonal_similarity(
    const Eigen::MatrixBase<Derived>& a, const ScalingVector& x) {
  using Scalar = typename Derived::Scalar;
  const auto xs = x.template cast<Scalar>();
  return xs.cwiseInverse().asDiagonal() * a * xs.asDiagonal();
}

/// a_ij x_j <= mu(A) x_i on every edge (no strictness).
ScalingVector visualizing_vector(const Matrix& a);

/// a_ij x_j <= mu(A) x_i on every edge, with equality exactly on critical edges.
/// Throws ConvergenceError when the constructed vector fails verification.
ScalingVector strict_visualizing_vector(const Matrix& a);

/// a_ij x_j >= nu(A) x_i on every edge, with equality exactly on anticritical edges.
ScalingVector strict_antivisualizing_vector(const Matrix& a);

/// Verification thresholds for strict (anti)visualization: tight edges within
/// kTightTolerance of equality, slack edges below it by more than kSlackMargin.
inline constexpr double kTightTolerance = 1e-9;
inline constexpr double kSlackMargin = 1e-7;

/// Per-edge ratio a_ij x_j / (level x_i) (or its reciprocal for antivisualization) is
/// checked against the critical graph. Returns an empty string on success.
std::string check_strict_visualization(const Matrix& a, const ScalingVector& x, Level level);

/// Row behaviour of A under a strict (anti)visualizing vector of B = aux(A).
struct RowInteraction {
  Level level = Level::Max;
  double bound = 0.0;              // mu(B) or nu(B)
  std::vector<char> tight;         // (Ax)_i == bound * x_i
  std::vector<char> strictly_critical;
  Vector ratio;                    // (Ax)_i / (bound * x_i)
};

/// Classifies rows as tight or slack and checks the dichotomy
/// "tight iff strictly (anti)critical in aux(A)"; throws std::logic_error if it fails.
RowInteraction row_interaction(const Matrix& a, const ScalingVector& x, Level level);

enum class ScalingCase { Equal, Strict };

struct AevddScalings {
  double mu = 0.0;  // of aux(A)
  double nu = 0.0;
  double rho = 0.0;
  ScalingVector substochastic_scaling;    // X^{-1} A X / mu: row sums <= 1
  ScalingVector superstochastic_scaling;  // X^{-1} A X / nu: row sums >= 1
  ScalingCase scaling_case = ScalingCase::Equal;
};

/// Sub/superstochastic scalings of an irreducible A against the bounds of aux(A).
AevddScalings aevdd_scalings(const Matrix& a);

/// Observer invoked with every fixed-point iterate y^(s), starting from y^(0) = 1.
using IterateObserver = std::function<void(const Vector&)>;

struct SumVisualizeOptions {
  double step_tolerance = 1e-12;
  long max_iterations = 1000000;
  double verify_tolerance = 1e-9;
  IterateObserver observer;
};

/// Relative tolerance for level-range preconditions.
inline constexpr double kLevelRangeTolerance = 1e-10;

/// a-sum visualization: x such that C = X^{-1} A X has c_ij <= level and row sums >= level.
/// Requires A irreducible and mu(A) <= level <= rho(A); throws InfeasibleError otherwise.
ScalingVector sum_visualize(const Matrix& a, double level, const SumVisualizeOptions& options = {});

/// x such that every support entry of C = X^{-1} A X is >= level and
/// sum_j level / c_ij >= 1 per row. Requires 1/level in [1/nu(A), rho(A^[-1])].
ScalingVector sum_visualize_inverse(const Matrix& a, double level, const SumVisualizeOptions& options = {});

}  // namespace spectral_range
