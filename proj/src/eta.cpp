#include "spectral_range/eta.hpp"

#include <cmath>
#include <sstream>

#include "spectral_range/errors.hpp"

namespace spectral_range {

namespace {

bool same_value(double x, double y) { return std::abs(x - y) <= 1e-10 * std::max(std::abs(x), std::abs(y)); }

bool near_endpoint(double target, double endpoint) {
  return std::abs(target - endpoint) <= kEndpointTolerance * std::max(std::abs(endpoint), std::abs(target));
}

std::string format_range(const PerronRange& range) {
  std::ostringstream out;
  out.precision(17);
  out << (range.lower_attained ? "[" : "(") << range.lower << ", " << range.upper
      << (range.upper_attained ? "]" : ")");
  return out.str();
}

}  // namespace

bool PerronRange::contains(double target) const {
  if (near_endpoint(target, lower)) return lower_attained;
  if (near_endpoint(target, upper)) return upper_attained;
  return !degenerate && lower < target && target < upper;
}

PerronRange describe_eta(const RowUniformMatrix& b) {
  const Matrix dense = b.dense();
  const FrobeniusForm form = frobenius_form(b);
  const ExtremalParams params = extremal_params(b);
  PerronRange range;
  range.lower = params.m;
  range.upper = params.M;
  if (params.M == 0.0) {
    range.lower_attained = range.upper_attained = range.degenerate = true;
    return range;
  }
  bool all_maximizers_balanced = true;
  for (std::size_t c = 0; c < form.class_count(); ++c) {
    if (!form.is_final(c) || form.is_trivial(c)) continue;
    const auto& nodes = form.classes[c];
    const CycleMeanReport means = cycle_means(dense(nodes, nodes));
    const bool balanced = same_value(means.mu, means.nu);
    if (balanced && same_value(means.mu, params.M)) range.upper_attained = true;
    if (same_value(means.nu, params.m) && !balanced) all_maximizers_balanced = false;
  }
  range.lower_attained = params.m > 0.0 && all_maximizers_balanced;
  if (same_value(params.m, params.M)) {
    range.degenerate = range.lower_attained = range.upper_attained = true;
  }
  return range;
}

void require_in_eta(const RowUniformMatrix& b, const PerronRange& range, double target) {
  (void)b;
  if (!std::isfinite(target)) throw std::invalid_argument("target must be finite");
  if (range.contains(target)) return;
  std::ostringstream detail;
  detail.precision(17);
  detail << "target " << target << " not in eta(B) = " << format_range(range);
  if (range.degenerate && range.upper == 0.0)
    throw InfeasibleError(target > 0.0 ? Clause::AboveUpperBound : Clause::BelowLowerBound, detail.str());
  if (range.degenerate) throw InfeasibleError(Clause::OutsideDegenerateRange, detail.str());
  if (near_endpoint(target, range.upper)) throw InfeasibleError(Clause::UpperEndpointNotAttained, detail.str());
  if (target > range.upper) throw InfeasibleError(Clause::AboveUpperBound, detail.str());
  if (near_endpoint(target, range.lower))
    throw InfeasibleError(range.lower == 0.0 ? Clause::ZeroRequiresAcyclic : Clause::LowerEndpointNotAttained,
                          detail.str());
  throw InfeasibleError(range.lower == 0.0 && target == 0.0 ? Clause::ZeroRequiresAcyclic : Clause::BelowLowerBound,
                        detail.str());
}

const char* to_string(RealizationPath path) {
  switch (path) {
    case RealizationPath::Degenerate: return "degenerate";
    case RealizationPath::UpperEndpoint: return "upper-endpoint";
    case RealizationPath::LowerEndpoint: return "lower-endpoint";
    case RealizationPath::Bisection: return "bisection";
  }
  return "";
}

std::optional<SingleRowBlend> solve_single_row_blend(const RowUniformMatrix& b, double target) {
  if (!is_irreducible(b)) return std::nullopt;
  const Matrix dense = b.dense();
  const CycleMeanReport means = cycle_means(dense);
  if (!(means.nu < target && target < means.mu) || near_endpoint(target, means.nu) ||
      near_endpoint(target, means.mu))
    return std::nullopt;
  const SunflowerSubgraph high = simple_sunflower(b, optimal_cycle(dense, Level::Max));
  const SunflowerSubgraph low = simple_sunflower(b, optimal_cycle(dense, Level::Min));

  const int n = static_cast<int>(b.size());
  int row = -1;
  for (int i = 0; i < n; ++i) {
    if (high.out_edge[i] == low.out_edge[i]) continue;
    if (row != -1) return std::nullopt;
    row = i;
  }
  if (row == -1) return std::nullopt;

  // Eigenvector with x_row = 1: every other node follows its shared out-edge toward `row`,
  // and b_i x_next = rho x_i along the way.
  Vector x = Vector::Constant(n, -1.0);
  x(row) = 1.0;
  for (int start = 0; start < n; ++start) {
    std::vector<int> path;
    int v = start;
    while (x(v) < 0.0) {
      if (static_cast<int>(path.size()) > n) return std::nullopt;  // shared edges cycle away from `row`
      path.push_back(v);
      v = *high.out_edge[v];
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      x(*it) = b.row_value(*it) / target * x(v);
      v = *it;
    }
  }

  const int p = *high.out_edge[row];
  const int q = *low.out_edge[row];
  const double bt = b.row_value(row);
  if (x(q) == x(p)) return std::nullopt;
  // (b_t - y) x_p + y x_q = rho x_row = rho.
  const double y = (target - bt * x(p)) / (x(q) - x(p));
  if (!(y > 0.0 && y < bt)) return std::nullopt;

  SingleRowBlend blend;
  blend.matrix = high.to_matrix(b);
  blend.matrix(row, p) = bt - y;
  blend.matrix(row, q) = y;
  blend.row = row;
  blend.max_target = p;
  blend.min_target = q;
  blend.y = y;
  blend.target = target;
  blend.eigenvector = x / x.maxCoeff();
  const double residual = (blend.matrix * blend.eigenvector - target * blend.eigenvector).cwiseAbs().maxCoeff();
  if (residual > 1e-9 * std::max(target, 1.0)) return std::nullopt;
  return blend;
}

PerronRealization realize_perron_root(const RowUniformMatrix& b, double target) {
  const PerronRange range = describe_eta(b);
  require_in_eta(b, range, target);
  const Matrix uniform = b.uniform_split();
  PerronRealization result;

  auto finish = [&](Matrix a) {
    result.rho = perron_root(a);
    if (!aux(a).approx_equal(b, 1e-9))
      throw std::logic_error("realize_perron_root: constructed matrix does not have aux(A) = B");
    if (std::abs(result.rho - target) > 1e-6 * std::max(target, 1.0))
      throw ConvergenceError("realize_perron_root: Perron root missed the target");
    result.matrix = std::move(a);
    return result;
  };

  if (range.degenerate) {
    result.path = RealizationPath::Degenerate;
    return finish(uniform);
  }
  if (near_endpoint(target, range.upper)) {
    // A final class with mu = nu = M(B) has rho = M(B) for every split.
    result.path = RealizationPath::UpperEndpoint;
    return finish(uniform);
  }
  if (near_endpoint(target, range.lower)) {
    result.path = RealizationPath::LowerEndpoint;
    const Matrix thin = minimal_sunflower(b).to_matrix(b);
    double epsilon = 1e-2;
    for (int halving = 0; halving <= kMaxEpsilonHalvings; ++halving, epsilon /= 2) {
      const Matrix a = (1.0 - epsilon) * thin + epsilon * uniform;
      if (perron_root(a) <= range.lower + 1e-9 * std::max(range.lower, 1.0)) {
        result.epsilon_halvings = halving;
        return finish(a);
      }
    }
    throw ConvergenceError("realize_perron_root: lower endpoint blend did not settle at m(B)");
  }

  result.path = RealizationPath::Bisection;
  result.closed_form = solve_single_row_blend(b, target);
  const Matrix s_min = minimal_sunflower(b).to_matrix(b);
  const Matrix s_max = maximal_sunflower(b).to_matrix(b);
  Matrix a_low, a_high;
  double epsilon = 1e-2;
  bool bracketed = false;
  for (int halving = 0; halving <= kMaxEpsilonHalvings; ++halving, epsilon /= 2) {
    a_low = (1.0 - epsilon) * s_min + epsilon * uniform;
    a_high = (1.0 - epsilon) * s_max + epsilon * uniform;
    if (perron_root(a_low) < target && target < perron_root(a_high)) {
      result.epsilon_halvings = halving;
      bracketed = true;
      break;
    }
  }
  if (!bracketed) throw ConvergenceError("realize_perron_root: could not bracket the target between sunflower blends");

  double lo = 0.0, hi = 1.0;
  double best_lambda = 0.5, best_gap = std::numeric_limits<double>::infinity();
  for (int step = 0; step < kMaxBisectionSteps; ++step) {
    const double mid = 0.5 * (lo + hi);
    const double gap = perron_root((1.0 - mid) * a_low + mid * a_high) - target;
    result.bisection_steps = step + 1;
    if (std::abs(gap) < best_gap) {
      best_gap = std::abs(gap);
      best_lambda = mid;
    }
    if (std::abs(gap) <= 1e-13 * std::max(target, 1.0) || hi - lo <= 1e-17) break;
    (gap < 0.0 ? lo : hi) = mid;
  }
  return finish((1.0 - best_lambda) * a_low + best_lambda * a_high);
}

}  // namespace spectral_range
