#include "spectral_range/matrix_core.hpp"

#include <algorithm>
#include <string>

namespace spectral_range {

void require_nonnegative(const Matrix& a, const char* what) {
  if (a.rows() == 0 || a.rows() != a.cols())
    throw std::invalid_argument(std::string(what) + " must be square and nonempty");
  if (!a.allFinite()) throw std::invalid_argument(std::string(what) + " has non-finite entries");
  if ((a.array() < 0.0).any()) throw std::invalid_argument(std::string(what) + " has negative entries");
}

RowUniformMatrix aux(const Matrix& a) {
  require_nonnegative(a);
  return aux_of_moduli(a);
}

RowUniformMatrix aux_complex(const ComplexMatrix& a) {
  if (a.rows() == 0 || a.rows() != a.cols())
    throw std::invalid_argument("complex matrix must be square and nonempty");
  return aux_of_moduli(a);
}

Digraph support_graph(const SupportMask& support) {
  Digraph graph(support.rows());
  for (Eigen::Index i = 0; i < support.rows(); ++i)
    for (Eigen::Index j = 0; j < support.cols(); ++j)
      if (support(i, j)) graph[i].push_back(static_cast<int>(j));
  return graph;
}

Digraph support_graph(const Matrix& a) { return support_graph(SupportMask(a.array() != 0.0)); }

RowUniformMatrix principal_submatrix(const RowUniformMatrix& b, const std::vector<int>& nodes) {
  SupportMask support = b.support()(nodes, nodes);
  Vector values(static_cast<Eigen::Index>(nodes.size()));
  for (std::size_t k = 0; k < nodes.size(); ++k) values(k) = b.row_value(nodes[k]);
  // A row may lose all of its support inside the subgraph; the constructor zeroes it.
  return RowUniformMatrix(std::move(support), std::move(values));
}

FrobeniusForm frobenius_form(const SupportMask& support) {
  const Digraph graph = support_graph(support);
  FrobeniusForm form;
  form.classes = strongly_connected_components(graph);
  const std::size_t m = form.classes.size();
  form.class_of.assign(graph.size(), -1);
  for (std::size_t c = 0; c < m; ++c)
    for (int v : form.classes[c]) form.class_of[v] = static_cast<int>(c);
  for (std::size_t c = 0; c < m; ++c) {
    const auto& nodes = form.classes[c];
    form.permutation.insert(form.permutation.end(), nodes.begin(), nodes.end());
    const bool trivial = nodes.size() == 1 && !support(nodes[0], nodes[0]);
    form.class_kind.push_back(trivial ? ClassKind::Trivial : ClassKind::Nontrivial);
    bool leaves = false;
    for (int v : nodes)
      for (int w : graph[v])
        if (form.class_of[w] != static_cast<int>(c)) leaves = true;
    form.class_access.push_back(leaves ? ClassAccess::Transient : ClassAccess::Final);
  }
  return form;
}

FrobeniusForm frobenius_form(const Matrix& a) { return frobenius_form(SupportMask(a.array() != 0.0)); }

bool is_irreducible(const SupportMask& support) { return frobenius_form(support).irreducible(); }

}  // namespace spectral_range
