#pragma once

#include <optional>
#include <vector>

#include "spectral_range/cycle_means.hpp"

namespace spectral_range {

/// Spanning subgraph keeping exactly one outgoing edge per node that has one in the host.
/// Edge weights are the host's: a retained edge (i, j) carries the host row value of i.
struct SunflowerSubgraph {
  std::vector<std::optional<int>> out_edge;

  std::size_t size() const { return out_edge.size(); }

  /// Matrix of the subgraph: entry (i, out_edge[i]) = b.row_value(i).
  Matrix to_matrix(const RowUniformMatrix& b) const;

  /// The cycles of the functional graph, each starting at its smallest node.
  std::vector<std::vector<int>> cycles() const;

  /// Empty string when the subgraph is a sunflower of `b`'s graph; otherwise a reason.
  std::string check(const RowUniformMatrix& b) const;
};

/// Simple gamma-sunflower of a strongly connected b: its only cycle is `gamma`, every node
/// reaches it. Grows a frontier from gamma taking the smallest (source, target) entering edge.
SunflowerSubgraph simple_sunflower(const RowUniformMatrix& b, const std::vector<int>& gamma);

/// Thin sunflower: the chosen cycles (one per nontrivial final class) are its only cycles.
/// Transient classes get a reverse-BFS tree toward their smallest exit node.
SunflowerSubgraph thin_sunflower(const RowUniformMatrix& b, const std::vector<std::vector<int>>& chosen_cycles);

/// Thin sunflower through a minimum-mean cycle of every nontrivial final class; its
/// maximal cycle mean is m(B).
SunflowerSubgraph minimal_sunflower(const RowUniformMatrix& b);

/// Sunflower containing a maximum-mean cycle of b; its maximal cycle mean is M(B) = mu(B).
/// Requires a cycle.
SunflowerSubgraph maximal_sunflower(const RowUniformMatrix& b);

struct ExtremalParams {
  double M = 0.0;  // max over sunflowers of their maximal cycle mean
  double m = 0.0;  // min over sunflowers of their maximal cycle mean
};

/// M(B) = mu(B); m(B) = max over final classes of nu(B_i), 0 if all final classes are trivial.
ExtremalParams extremal_params(const RowUniformMatrix& b);

}  // namespace spectral_range
