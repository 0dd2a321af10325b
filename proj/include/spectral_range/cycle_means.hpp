#pragma once

#include <vector>

#include "spectral_range/matrix_core.hpp"

namespace spectral_range {

/// Maximal (mu) and minimal (nu) geometric cycle means. Both are 0 for acyclic input.
struct CycleMeanReport {
  double mu = 0.0;
  double nu = 0.0;
  bool has_cycle = false;
};

CycleMeanReport cycle_means(const Matrix& a);

enum class Level { Max, Min };

/// Nodes and edges on cycles attaining mu (Level::Max) or nu (Level::Min).
/// `strict_nodes` are critical nodes all of whose outgoing support edges are critical.
struct CriticalGraph {
  std::vector<int> nodes;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> strict_nodes;

  bool has_edge(int i, int j) const;
  bool has_node(int i) const;
};

/// Tolerance on the closing-cycle weight, in the log domain, for calling an edge critical.
inline constexpr double kCriticalTolerance = 1e-9;

CriticalGraph critical_graph(const Matrix& a, Level level);

/// A cycle (node sequence) whose geometric mean attains mu or nu. Requires a cycle.
std::vector<int> optimal_cycle(const Matrix& a, Level level);

/// Max-plus weights: absent entries are -infinity.
using MaxPlusMatrix = Eigen::MatrixXd;

/// Max-plus closure I + G + G^2 + ...; entry (i,j) is the heaviest path weight from i to j,
/// 0 on the diagonal. Throws std::domain_error if a cycle has positive weight.
MaxPlusMatrix kleene_star_maxplus(const MaxPlusMatrix& g);

/// log(a_ij / scale) on the support, -infinity elsewhere.
MaxPlusMatrix log_normalized(const Matrix& a, double scale);

/// Perron root: the largest class spectral radius, by shifted power iteration per class.
double perron_root(const Matrix& a);

/// Positive Perron vector of an irreducible matrix, normalized to max component 1.
Vector perron_vector(const Matrix& a);

/// Collatz-Wielandt convergence threshold and iteration budget of the power iteration.
inline constexpr double kPerronRelativeTolerance = 1e-12;
inline constexpr int kPerronMaxIterations = 100000;

}  // namespace spectral_range
