#pragma once

#include <optional>
#include <span>
#include <vector>

namespace spectral_range {

/// Adjacency lists; successors are kept in ascending order.
using Digraph = std::vector<std::vector<int>>;

/// Strongly connected components, each sorted ascending. Components are emitted so
/// that every edge leaving a component points to an earlier one (sinks first).
/// Iterative Tarjan; no recursion.
std::vector<std::vector<int>> strongly_connected_components(const Digraph& graph);

bool is_strongly_connected(const Digraph& graph);

/// Maximum bipartite matching of rows to columns over the given row adjacency.
/// Returns row -> column (or -1), via augmenting paths.
std::vector<int> maximum_matching(const Digraph& rows, int columns);

/// A perfect matching, if one exists.
std::optional<std::vector<int>> perfect_matching(const Digraph& rows);

/// Shortest cycle through `node` (BFS), as a node sequence starting at `node`.
/// Only nodes with `allowed[v]` are used when a mask is given.
std::optional<std::vector<int>> shortest_cycle_through(const Digraph& graph, int node,
                                                       std::span<const char> allowed = {});

/// True iff consecutive entries (cyclically) are edges and the nodes are distinct.
bool is_cycle(const Digraph& graph, std::span<const int> cycle);

}  // namespace spectral_range
