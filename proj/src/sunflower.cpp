#include "spectral_range/sunflower.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace spectral_range {

Matrix SunflowerSubgraph::to_matrix(const RowUniformMatrix& b) const {
  const Eigen::Index n = b.size();
  Matrix s = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    if (out_edge[i]) s(i, *out_edge[i]) = b.row_value(i);
  return s;
}

std::vector<std::vector<int>> SunflowerSubgraph::cycles() const {
  const int n = static_cast<int>(size());
  std::vector<int> state(n, 0);  // 0 unvisited, 1 on current walk, 2 done
  std::vector<std::vector<int>> result;
  for (int start = 0; start < n; ++start) {
    std::vector<int> walk;
    int v = start;
    while (v != -1 && state[v] == 0) {
      state[v] = 1;
      walk.push_back(v);
      v = out_edge[v] ? *out_edge[v] : -1;
    }
    if (v != -1 && state[v] == 1) {
      std::vector<int> cycle(std::find(walk.begin(), walk.end(), v), walk.end());
      std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
      result.push_back(std::move(cycle));
    }
    for (int w : walk) state[w] = 2;
  }
  return result;
}

std::string SunflowerSubgraph::check(const RowUniformMatrix& b) const {
  if (static_cast<Eigen::Index>(size()) != b.size()) return "size mismatch";
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    const bool host_has_edge = b.has_row_value(i);
    if (host_has_edge != out_edge[i].has_value())
      return "node " + std::to_string(i + 1) + (host_has_edge ? " lost its outgoing edge" : " gained an edge");
    if (out_edge[i] && !b.support()(i, *out_edge[i]))
      return "edge from node " + std::to_string(i + 1) + " is not in the host graph";
  }
  return {};
}

namespace {

Digraph predecessors(const Digraph& graph) {
  Digraph pred(graph.size());
  for (std::size_t u = 0; u < graph.size(); ++u)
    for (int v : graph[u]) pred[v].push_back(static_cast<int>(u));
  for (auto& list : pred) std::sort(list.begin(), list.end());
  return pred;
}

// Frontier growth from a cycle. Among nodes outside the tree with an edge into it, the
// smallest source is attached by its smallest in-tree target. Only `allowed` nodes join.
void grow_from_cycle(const Digraph& graph, const Digraph& pred, const std::vector<char>& allowed,
                     const std::vector<int>& gamma, SunflowerSubgraph& out) {
  const int n = static_cast<int>(graph.size());
  std::vector<char> in_tree(n, 0);
  std::vector<int> best_target(n, n);
  std::set<int> candidates;
  auto add_to_tree = [&](int v) {
    in_tree[v] = 1;
    candidates.erase(v);
    for (int u : pred[v]) {
      if (!allowed[u] || in_tree[u]) continue;
      best_target[u] = std::min(best_target[u], v);
      candidates.insert(u);
    }
  };
  for (std::size_t k = 0; k < gamma.size(); ++k) out.out_edge[gamma[k]] = gamma[(k + 1) % gamma.size()];
  for (int v : gamma) in_tree[v] = 1;
  for (int v : gamma) add_to_tree(v);
  while (!candidates.empty()) {
    const int u = *candidates.begin();
    out.out_edge[u] = best_target[u];
    add_to_tree(u);
  }
}

std::vector<int> to_global(const std::vector<int>& local, const std::vector<int>& nodes) {
  std::vector<int> global;
  global.reserve(local.size());
  for (int v : local) global.push_back(nodes[v]);
  return global;
}

}  // namespace

SunflowerSubgraph simple_sunflower(const RowUniformMatrix& b, const std::vector<int>& gamma) {
  const Digraph graph = support_graph(b);
  if (!is_strongly_connected(graph)) throw std::invalid_argument("simple_sunflower: graph is not strongly connected");
  if (!is_cycle(graph, gamma)) throw std::invalid_argument("simple_sunflower: gamma is not a cycle of the graph");
  SunflowerSubgraph result{std::vector<std::optional<int>>(graph.size())};
  grow_from_cycle(graph, predecessors(graph), std::vector<char>(graph.size(), 1), gamma, result);
  return result;
}

SunflowerSubgraph thin_sunflower(const RowUniformMatrix& b, const std::vector<std::vector<int>>& chosen_cycles) {
  const Digraph graph = support_graph(b);
  const Digraph pred = predecessors(graph);
  const FrobeniusForm form = frobenius_form(b);
  const int n = static_cast<int>(graph.size());

  std::vector<const std::vector<int>*> cycle_of_class(form.class_count(), nullptr);
  for (const auto& cycle : chosen_cycles) {
    if (!is_cycle(graph, cycle)) throw std::invalid_argument("thin_sunflower: a chosen cycle is not a cycle of the graph");
    const int c = form.class_of[cycle.front()];
    const bool inside = std::all_of(cycle.begin(), cycle.end(), [&](int v) { return form.class_of[v] == c; });
    if (!inside || !form.is_final(c))
      throw std::invalid_argument("thin_sunflower: a chosen cycle is not inside its final class");
    if (cycle_of_class[c]) throw std::invalid_argument("thin_sunflower: two cycles chosen in one final class");
    cycle_of_class[c] = &cycle;
  }

  SunflowerSubgraph result{std::vector<std::optional<int>>(n)};
  for (std::size_t c = 0; c < form.class_count(); ++c) {
    const auto& nodes = form.classes[c];
    std::vector<char> in_class(n, 0);
    for (int v : nodes) in_class[v] = 1;
    if (form.is_final(c)) {
      if (form.is_trivial(c)) continue;
      if (!cycle_of_class[c])
        throw std::invalid_argument("thin_sunflower: no cycle chosen for final class containing node " +
                                    std::to_string(nodes.front() + 1));
      grow_from_cycle(graph, pred, in_class, *cycle_of_class[c], result);
      continue;
    }
    // Transient: smallest node with an edge out of the class exits by its smallest such edge.
    int exit_node = -1, exit_target = -1;
    for (int v : nodes) {
      for (int w : graph[v])
        if (!in_class[w]) {
          exit_node = v;
          exit_target = w;
          break;
        }
      if (exit_node != -1) break;
    }
    result.out_edge[exit_node] = exit_target;
    std::vector<char> reached(n, 0);
    reached[exit_node] = 1;
    std::deque<int> queue{exit_node};
    while (!queue.empty()) {
      const int w = queue.front();
      queue.pop_front();
      for (int u : pred[w]) {
        if (!in_class[u] || reached[u]) continue;
        reached[u] = 1;
        result.out_edge[u] = w;
        queue.push_back(u);
      }
    }
  }
  return result;
}

SunflowerSubgraph minimal_sunflower(const RowUniformMatrix& b) {
  const FrobeniusForm form = frobenius_form(b);
  const Matrix dense = b.dense();
  std::vector<std::vector<int>> cycles;
  for (std::size_t c = 0; c < form.class_count(); ++c) {
    if (!form.is_final(c) || form.is_trivial(c)) continue;
    const auto& nodes = form.classes[c];
    cycles.push_back(to_global(optimal_cycle(dense(nodes, nodes), Level::Min), nodes));
  }
  return thin_sunflower(b, cycles);
}

SunflowerSubgraph maximal_sunflower(const RowUniformMatrix& b) {
  const Matrix dense = b.dense();
  const std::vector<int> alpha = optimal_cycle(dense, Level::Max);
  const Digraph graph = support_graph(b);
  SunflowerSubgraph result{std::vector<std::optional<int>>(graph.size())};
  grow_from_cycle(graph, predecessors(graph), std::vector<char>(graph.size(), 1), alpha, result);
  // Nodes that cannot reach alpha keep their smallest edge; any cycle they close has mean <= mu.
  for (std::size_t v = 0; v < graph.size(); ++v)
    if (!result.out_edge[v] && !graph[v].empty()) result.out_edge[v] = graph[v].front();
  return result;
}

ExtremalParams extremal_params(const RowUniformMatrix& b) {
  const Matrix dense = b.dense();
  const FrobeniusForm form = frobenius_form(b);
  ExtremalParams params;
  params.M = cycle_means(dense).mu;
  for (std::size_t c = 0; c < form.class_count(); ++c) {
    if (!form.is_final(c) || form.is_trivial(c)) continue;
    const auto& nodes = form.classes[c];
    params.m = std::max(params.m, cycle_means(dense(nodes, nodes)).nu);
  }
  return params;
}

}  // namespace spectral_range
