#include "spectral_range/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace spectral_range {

std::vector<std::vector<int>> strongly_connected_components(const Digraph& graph) {
  const int n = static_cast<int>(graph.size());
  std::vector<int> index(n, -1);
  std::vector<int> lowlink(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> components;
  int counter = 0;

  struct Frame {
    int node;
    std::size_t next_child;
  };
  std::vector<Frame> call_stack;

  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    call_stack.push_back({root, 0});
    index[root] = lowlink[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;

    while (!call_stack.empty()) {
      Frame& frame = call_stack.back();
      const int v = frame.node;
      if (frame.next_child < graph[v].size()) {
        const int w = graph[v][frame.next_child++];
        if (index[w] == -1) {
          index[w] = lowlink[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call_stack.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
        continue;
      }
      if (lowlink[v] == index[v]) {
        std::vector<int> component;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          component.push_back(w);
        } while (w != v);
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
      }
      call_stack.pop_back();
      if (!call_stack.empty()) {
        const int parent = call_stack.back().node;
        lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
      }
    }
  }
  return components;
}

bool is_strongly_connected(const Digraph& graph) {
  return !graph.empty() && strongly_connected_components(graph).size() == 1;
}

namespace {

bool augment(const Digraph& rows, int row, std::vector<int>& column_owner, std::vector<char>& visited) {
  // Iterative DFS over alternating paths.
  struct Frame {
    int row;
    std::size_t next;
  };
  std::vector<Frame> frames{{row, 0}};
  std::vector<int> via_column;
  while (!frames.empty()) {
    Frame& f = frames.back();
    if (f.next == rows[f.row].size()) {
      frames.pop_back();
      if (!via_column.empty()) via_column.pop_back();
      continue;
    }
    const int col = rows[f.row][f.next++];
    if (visited[col]) continue;
    visited[col] = 1;
    if (column_owner[col] == -1) {
      // Flip the path: frames[k].row takes via_column[k] (k < depth), last row takes col.
      via_column.push_back(col);
      for (std::size_t k = 0; k < frames.size(); ++k) column_owner[via_column[k]] = frames[k].row;
      return true;
    }
    via_column.push_back(col);
    frames.push_back({column_owner[col], 0});
  }
  return false;
}

}  // namespace

std::vector<int> maximum_matching(const Digraph& rows, int columns) {
  std::vector<int> column_owner(columns, -1);
  for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
    std::vector<char> visited(columns, 0);
    augment(rows, r, column_owner, visited);
  }
  std::vector<int> row_match(rows.size(), -1);
  for (int c = 0; c < columns; ++c)
    if (column_owner[c] != -1) row_match[column_owner[c]] = c;
  return row_match;
}

std::optional<std::vector<int>> perfect_matching(const Digraph& rows) {
  auto match = maximum_matching(rows, static_cast<int>(rows.size()));
  if (std::find(match.begin(), match.end(), -1) != match.end()) return std::nullopt;
  return match;
}

std::optional<std::vector<int>> shortest_cycle_through(const Digraph& graph, int node,
                                                       std::span<const char> allowed) {
  const int n = static_cast<int>(graph.size());
  auto ok = [&](int v) { return allowed.empty() || allowed[v]; };
  std::vector<int> parent(n, -2);
  std::deque<int> queue;
  for (int w : graph[node]) {
    if (!ok(w)) continue;
    if (w == node) return std::vector<int>{node};
    if (parent[w] == -2) {
      parent[w] = node;
      queue.push_back(w);
    }
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : graph[v]) {
      if (!ok(w)) continue;
      if (w == node) {
        std::vector<int> path;
        for (int u = v; u != node; u = parent[u]) path.push_back(u);
        path.push_back(node);
        std::reverse(path.begin(), path.end());
        return path;
      }
      if (parent[w] == -2) {
        parent[w] = v;
        queue.push_back(w);
      }
    }
  }
  return std::nullopt;
}

bool is_cycle(const Digraph& graph, std::span<const int> cycle) {
  const int n = static_cast<int>(graph.size());
  if (cycle.empty()) return false;
  std::vector<char> seen(n, 0);
  for (int v : cycle) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    const int from = cycle[k];
    const int to = cycle[(k + 1) % cycle.size()];
    if (!std::binary_search(graph[from].begin(), graph[from].end(), to)) return false;
  }
  return true;
}

}  // namespace spectral_range
