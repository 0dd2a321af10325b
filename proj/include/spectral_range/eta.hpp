#pragma once

#include <optional>
#include <string>

#include "spectral_range/sunflower.hpp"

namespace spectral_range {

/// The set of Perron roots rho(A) over all nonnegative A with aux(A) = B:
/// an interval [lower, upper] = [m(B), M(B)] with per-endpoint attainment.
struct PerronRange {
  double lower = 0.0;
  double upper = 0.0;
  bool lower_attained = false;
  bool upper_attained = false;
  bool degenerate = false;

  /// Membership; targets within kEndpointTolerance (relative) of an endpoint count as
  /// that endpoint.
  bool contains(double target) const;
};

inline constexpr double kEndpointTolerance = 1e-12;

PerronRange describe_eta(const RowUniformMatrix& b);

/// Throws InfeasibleError naming the violated clause when target is not in eta(b).
void require_in_eta(const RowUniformMatrix& b, const PerronRange& range, double target);

/// The single-row closed form: two simple sunflowers (through a maximum- and a
/// minimum-mean cycle) that differ only in row `row`. Blending that row as
/// (b_t - y) on the first target and y on the second gives an explicit eigenpair.
struct SingleRowBlend {
  Matrix matrix;      // support is the union of the two sunflowers, row sums are b's
  int row = -1;
  int max_target = -1;  // column carrying b_t - y
  int min_target = -1;  // column carrying y
  double y = 0.0;
  Vector eigenvector;  // positive, max component 1
  double target = 0.0;
};

/// Closed-form blend for irreducible b when the two simple sunflowers differ in exactly
/// one row and the target lies strictly inside (nu, mu); nullopt otherwise.
std::optional<SingleRowBlend> solve_single_row_blend(const RowUniformMatrix& b, double target);

enum class RealizationPath { Degenerate, UpperEndpoint, LowerEndpoint, Bisection };

const char* to_string(RealizationPath path);

struct PerronRealization {
  Matrix matrix;  // aux(matrix) == b, rho(matrix) ~= target
  double rho = 0.0;
  RealizationPath path = RealizationPath::Bisection;
  int epsilon_halvings = 0;
  int bisection_steps = 0;
  std::optional<SingleRowBlend> closed_form;
};

/// A nonnegative A with aux(A) = b and rho(A) = target (|rho - target| <= 1e-6 max(target, 1)).
PerronRealization realize_perron_root(const RowUniformMatrix& b, double target);

inline constexpr int kMaxEpsilonHalvings = 60;
inline constexpr int kMaxBisectionSteps = 200;

}  // namespace spectral_range
