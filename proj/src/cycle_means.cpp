#include "spectral_range/cycle_means.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spectral_range {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Karp's maximum mean cycle on a strongly connected weighted digraph (log weights).
double karp_max_mean(const MaxPlusMatrix& w) {
  const Eigen::Index k = w.rows();
  Eigen::MatrixXd walk = Eigen::MatrixXd::Constant(k + 1, k, kNegInf);
  walk(0, 0) = 0.0;
  for (Eigen::Index t = 1; t <= k; ++t)
    for (Eigen::Index v = 0; v < k; ++v) {
      double best = kNegInf;
      for (Eigen::Index u = 0; u < k; ++u)
        if (walk(t - 1, u) > kNegInf && w(u, v) > kNegInf) best = std::max(best, walk(t - 1, u) + w(u, v));
      walk(t, v) = best;
    }
  double result = kNegInf;
  for (Eigen::Index v = 0; v < k; ++v) {
    if (walk(k, v) == kNegInf) continue;
    double worst = std::numeric_limits<double>::infinity();
    for (Eigen::Index t = 0; t < k; ++t)
      if (walk(t, v) > kNegInf)
        worst = std::min(worst, (walk(k, v) - walk(t, v)) / static_cast<double>(k - t));
    result = std::max(result, worst);
  }
  return result;
}

MaxPlusMatrix log_weights(const Matrix& a) {
  return a.unaryExpr([](double v) { return v > 0.0 ? std::log(v) : kNegInf; });
}

}  // namespace

CycleMeanReport cycle_means(const Matrix& a) {
  require_nonnegative(a);
  const FrobeniusForm form = frobenius_form(a);
  const MaxPlusMatrix logs = log_weights(a);
  CycleMeanReport report;
  double log_mu = kNegInf;
  double log_nu = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < form.class_count(); ++c) {
    if (form.is_trivial(c)) continue;
    const MaxPlusMatrix block = logs(form.classes[c], form.classes[c]);
    log_mu = std::max(log_mu, karp_max_mean(block));
    const MaxPlusMatrix negated = block.unaryExpr([](double v) { return v == kNegInf ? kNegInf : -v; });
    log_nu = std::min(log_nu, -karp_max_mean(negated));
    report.has_cycle = true;
  }
  if (report.has_cycle) {
    report.mu = std::exp(log_mu);
    report.nu = std::exp(log_nu);
  }
  return report;
}

MaxPlusMatrix log_normalized(const Matrix& a, double scale) {
  const double log_scale = std::log(scale);
  return a.unaryExpr([log_scale](double v) { return v > 0.0 ? std::log(v) - log_scale : kNegInf; });
}

MaxPlusMatrix kleene_star_maxplus(const MaxPlusMatrix& g) {
  if (g.rows() != g.cols()) throw std::invalid_argument("max-plus matrix must be square");
  const Eigen::Index n = g.rows();
  MaxPlusMatrix d = g;
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index i = 0; i < n; ++i) {
      if (d(i, k) == kNegInf) continue;
      for (Eigen::Index j = 0; j < n; ++j)
        if (d(k, j) > kNegInf) d(i, j) = std::max(d(i, j), d(i, k) + d(k, j));
    }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (d(i, i) > kCriticalTolerance)
      throw std::domain_error("max-plus closure diverges: cycle of positive weight through node " +
                              std::to_string(i + 1));
    d(i, i) = 0.0;
  }
  return d;
}

bool CriticalGraph::has_edge(int i, int j) const {
  return std::find(edges.begin(), edges.end(), std::make_pair(i, j)) != edges.end();
}

bool CriticalGraph::has_node(int i) const { return std::binary_search(nodes.begin(), nodes.end(), i); }

CriticalGraph critical_graph(const Matrix& a, Level level) {
  const CycleMeanReport means = cycle_means(a);
  if (!means.has_cycle) throw std::invalid_argument("critical graph: matrix has no cycle");
  const Eigen::Index n = a.rows();
  MaxPlusMatrix g;
  if (level == Level::Max) {
    g = log_normalized(a, means.mu);
  } else {
    g = log_normalized(hadamard_inverse(a), 1.0 / means.nu);
  }
  const MaxPlusMatrix star = kleene_star_maxplus(g);

  CriticalGraph result;
  std::vector<char> on_node(n, 0);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (g(i, j) == kNegInf || star(j, i) == kNegInf) continue;
      if (g(i, j) + star(j, i) >= -kCriticalTolerance) {
        result.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
        on_node[i] = on_node[j] = 1;
      }
    }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!on_node[i]) continue;
    result.nodes.push_back(static_cast<int>(i));
    bool all_critical = true;
    for (Eigen::Index j = 0; j < n && all_critical; ++j)
      if (a(i, j) > 0.0 && !result.has_edge(static_cast<int>(i), static_cast<int>(j))) all_critical = false;
    if (all_critical) result.strict_nodes.push_back(static_cast<int>(i));
  }
  return result;
}

std::vector<int> optimal_cycle(const Matrix& a, Level level) {
  const CriticalGraph crit = critical_graph(a, level);
  // Every cycle of the critical graph is critical; walk smallest edges until a repeat.
  std::vector<int> position(a.rows(), -1);
  std::vector<int> walk;
  int v = crit.nodes.front();
  while (position[v] == -1) {
    position[v] = static_cast<int>(walk.size());
    walk.push_back(v);
    int next = -1;
    for (const auto& [from, to] : crit.edges)
      if (from == v) {
        next = to;
        break;
      }
    if (next == -1) throw std::logic_error("critical graph has a node without a critical out-edge");
    v = next;
  }
  return {walk.begin() + position[v], walk.end()};
}

namespace {

// Spectral radius of an irreducible block, by power iteration on (block + shift I).
// Returns the eigenvector through `vector_out` when requested.
double class_perron_root(const Matrix& block, Vector* vector_out) {
  const Eigen::Index k = block.rows();
  if (k == 1) {
    if (vector_out) *vector_out = Vector::Ones(1);
    return block(0, 0);
  }
  // Any positive shift makes the iteration converge on imprimitive classes; the max row
  // sum keeps the stopping rule relative to the scale of rho.
  const double shift = block.rowwise().sum().maxCoeff();
  const Matrix shifted = block + shift * Matrix::Identity(k, k);
  Vector x = Vector::Ones(k);
  for (int it = 0; it < kPerronMaxIterations; ++it) {
    const Vector y = shifted * x;
    const Vector ratio = y.cwiseQuotient(x);
    const double lo = ratio.minCoeff();
    const double hi = ratio.maxCoeff();
    x = y / y.maxCoeff();
    if (hi - lo <= kPerronRelativeTolerance * hi) {
      if (vector_out) *vector_out = x;
      return 0.5 * (lo + hi) - shift;
    }
  }
  // Budget exhausted: fall back to a dense eigensolve.
  Eigen::EigenSolver<Matrix> solver(block, vector_out != nullptr);
  const auto values = solver.eigenvalues();
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < values.size(); ++i)
    if (values(i).real() > values(best).real()) best = i;
  if (vector_out) {
    Vector v = solver.eigenvectors().col(best).real();
    if (v.sum() < 0) v = -v;
    *vector_out = v.cwiseAbs() / v.cwiseAbs().maxCoeff();
  }
  return values(best).real();
}

}  // namespace

double perron_root(const Matrix& a) {
  require_nonnegative(a);
  const FrobeniusForm form = frobenius_form(a);
  double rho = 0.0;
  for (std::size_t c = 0; c < form.class_count(); ++c) {
    if (form.is_trivial(c)) continue;
    rho = std::max(rho, class_perron_root(a(form.classes[c], form.classes[c]), nullptr));
  }
  return rho;
}

Vector perron_vector(const Matrix& a) {
  require_nonnegative(a);
  if (!is_irreducible(a)) throw std::invalid_argument("perron_vector: matrix is reducible");
  Vector x;
  class_perron_root(a, &x);
  return x;
}

}  // namespace spectral_range
