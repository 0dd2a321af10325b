#include "spectral_range/camion_hoffman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace spectral_range {

namespace {

// Hungarian method with potentials (rows 1..n, columns 1..n, index 0 is the sentinel).
// Returns the column of each row minimizing the total cost, and the final potentials.
struct HungarianResult {
  std::vector<int> column_of_row;
  std::vector<double> u, v;
};

HungarianResult hungarian(const Matrix& cost) {
  const int n = static_cast<int>(cost.rows());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  HungarianResult result{std::vector<int>(n), std::move(u), std::move(v)};
  for (int j = 1; j <= n; ++j) result.column_of_row[p[j] - 1] = j - 1;
  return result;
}

// Smallest column_of_row (lexicographically) among perfect matchings of `graph`: fix rows
// in order, taking the smallest column that still leaves the rest matchable.
std::vector<int> lexicographic_matching(const Digraph& graph) {
  const int n = static_cast<int>(graph.size());
  std::vector<int> chosen(n, -1);
  std::vector<char> taken(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j : graph[i]) {
      if (taken[j]) continue;
      Digraph rest(n);
      for (int r = 0; r < n; ++r) {
        if (r < i) {
          rest[r] = {chosen[r]};
        } else if (r == i) {
          rest[r] = {j};
        } else {
          for (int c : graph[r])
            if (!taken[c] && c != j) rest[r].push_back(c);
        }
      }
      if (perfect_matching(rest)) {
        chosen[i] = j;
        taken[j] = 1;
        break;
      }
    }
  }
  return chosen;
}

Matrix permute_rows(const Matrix& a, const std::vector<int>& row_order) {
  Matrix pa(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) pa.row(i) = a.row(row_order[i]);
  return pa;
}

std::vector<int> row_order_from(const std::vector<int>& column_of_row) {
  std::vector<int> order(column_of_row.size());
  for (std::size_t i = 0; i < column_of_row.size(); ++i) order[column_of_row[i]] = static_cast<int>(i);
  return order;
}

// PAD - I; the diagonal of PAD is 1 up to rounding, so it is zeroed outright.
Matrix minus_identity(const Matrix& pad) {
  Matrix f = pad;
  f.diagonal().setZero();
  return f;
}

DominanceCertificate dominance_certificate(const Matrix& pad) {
  const Eigen::Index n = pad.rows();
  const Matrix f = minus_identity(pad);
  const FrobeniusForm form = frobenius_form(f);
  Vector z = Vector::Ones(n);
  double worst = 0.0;
  for (std::size_t c = 0; c < form.class_count(); ++c) {
    if (form.is_trivial(c)) continue;
    const auto& nodes = form.classes[c];
    const Matrix block = f(nodes, nodes);
    z(nodes) = perron_vector(block);
    worst = std::max(worst, perron_root(block));
  }
  const double delta = 1.0 - worst;
  // Classes come sinks first, so every edge leaving class u lands in an earlier class.
  // Raising u's multiplier shrinks those contributions below delta / 2.
  double multiplier = 1.0;
  for (std::size_t u = 1; u < form.class_count(); ++u) {
    const auto& nodes = form.classes[u];
    auto spill = [&](double scale) {
      double most = 0.0;
      for (int i : nodes) {
        double s = 0.0;
        for (Eigen::Index j = 0; j < n; ++j)
          if (form.class_of[j] != static_cast<int>(u)) s += f(i, j) * z(j);
        most = std::max(most, s / (scale * z(i)));
      }
      return most;
    };
    while (spill(multiplier) >= delta / 2) multiplier *= 2.0;
    z(nodes) *= multiplier;
  }
  z /= z.maxCoeff();
  DominanceCertificate cert;
  cert.dominance_scaling = z;
  const Matrix padz = pad * z.asDiagonal();
  cert.margin = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double off = padz.row(i).sum() - padz(i, i);
    cert.margin = std::min(cert.margin, 1.0 - off / padz(i, i));
  }
  return cert;
}

}  // namespace

std::optional<Assignment> max_product_assignment(const Matrix& a) {
  require_nonnegative(a);
  const Digraph graph = support_graph(a);
  if (!perfect_matching(graph)) return std::nullopt;
  const Eigen::Index n = a.rows();

  // Minimize sum of -log a_ij; zero entries get a cost no optimal matching can afford.
  Matrix cost(n, n);
  double spread = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (a(i, j) > 0.0) spread = std::max(spread, std::abs(std::log(a(i, j))));
  const double forbidden = 4.0 * (static_cast<double>(n) * spread + 1.0);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) cost(i, j) = a(i, j) > 0.0 ? -std::log(a(i, j)) : forbidden;
  const HungarianResult solved = hungarian(cost);

  // Every optimal matching uses only tight edges of the dual; pick the smallest one.
  Digraph tight(n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (a(i, j) == 0.0) continue;
      const double reduced = cost(i, j) - solved.u[i + 1] - solved.v[j + 1];
      if (std::abs(reduced) <= 1e-9 * (1.0 + std::abs(cost(i, j)))) tight[i].push_back(static_cast<int>(j));
    }
  Assignment result;
  result.column_of_row = lexicographic_matching(tight);
  if (std::find(result.column_of_row.begin(), result.column_of_row.end(), -1) != result.column_of_row.end())
    result.column_of_row = solved.column_of_row;
  result.product = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) result.product *= a(i, result.column_of_row[i]);
  return result;
}

RegularityVerdict decide(const Matrix& a) {
  require_nonnegative(a);
  RegularityVerdict verdict;
  const auto assignment = max_product_assignment(a);
  if (!assignment) {
    // Every generalized diagonal product vanishes, so every member of Omega(A) is singular.
    verdict.test_radius = std::numeric_limits<double>::infinity();
    verdict.witness = a.cast<Complex>();
    return verdict;
  }
  verdict.permutation = row_order_from(assignment->column_of_row);
  const Matrix pa = permute_rows(a, verdict.permutation);
  verdict.unit_diagonal_scaling = pa.diagonal().cwiseInverse();
  const Matrix pad = pa * verdict.unit_diagonal_scaling.asDiagonal();
  verdict.test_radius = perron_root(minus_identity(pad));
  verdict.boundary = std::abs(verdict.test_radius - 1.0) <= kDecisionTolerance;
  verdict.regular = verdict.test_radius < 1.0 - kDecisionTolerance;
  if (verdict.regular)
    verdict.certificate = dominance_certificate(pad);
  else
    verdict.witness = singular_witness(a, verdict.permutation, verdict.unit_diagonal_scaling);
  return verdict;
}

ComplexVector close_polygon(const Vector& lengths) {
  if (!lengths.allFinite() || (lengths.array() < 0.0).any())
    throw std::invalid_argument("close_polygon: lengths must be finite and nonnegative");
  const double total = lengths.sum();
  for (Eigen::Index k = 0; k < lengths.size(); ++k)
    if (lengths(k) > total - lengths(k) + 1e-9 * total)
      throw std::invalid_argument("close_polygon: length " + std::to_string(k + 1) + " exceeds the sum of the others");

  const Eigen::Index n = lengths.size();
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return lengths(x) > lengths(y); });
  double sums[3] = {0.0, 0.0, 0.0};
  std::vector<int> group(n);
  for (Eigen::Index k : order) {
    const int g = static_cast<int>(std::min_element(sums, sums + 3) - sums);
    group[k] = g;
    sums[g] += lengths(k);
  }

  // Close the triangle with sides sums[0..2]; the longest side lies on the real axis.
  Complex phase[3] = {1.0, 1.0, 1.0};
  int longest = static_cast<int>(std::max_element(sums, sums + 3) - sums);
  const int second = (longest + 1) % 3, third = (longest + 2) % 3;
  const double a = sums[longest], b = sums[second], c = sums[third];
  if (a > 0.0) {
    const double x = (a * a + c * c - b * b) / (2.0 * a);
    const double y = std::sqrt(std::max(0.0, (c - x) * (c + x)));
    const Complex corner(x, y);
    phase[longest] = 1.0;
    if (b > 0.0) phase[second] = (corner - a) / std::abs(corner - a);
    if (c > 0.0) phase[third] = -corner / std::abs(corner);
  }
  ComplexVector result(n);
  for (Eigen::Index k = 0; k < n; ++k) result(k) = lengths(k) * phase[group[k]];
  return result;
}

ComplexMatrix singular_row_matrix(const Matrix& e) {
  require_nonnegative(e, "singular_row_matrix input");
  const Eigen::Index n = e.rows();
  constexpr double tol = 1e-9;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(e(i, i) - 1.0) > tol) throw std::invalid_argument("singular_row_matrix: diagonal must be 1");
    if (e.row(i).maxCoeff() > 1.0 + tol) throw std::invalid_argument("singular_row_matrix: entries must be <= 1");
    if (e.row(i).sum() - e(i, i) < 1.0 - tol)
      throw std::invalid_argument("singular_row_matrix: off-diagonal row sum must be >= 1");
  }
  ComplexMatrix c(n, n);
  for (Eigen::Index i = 0; i < n; ++i) c.row(i) = close_polygon(e.row(i).transpose()).transpose();
  return c;
}

ComplexMatrix singular_witness(const Matrix& a, const std::vector<int>& permutation, const Vector& d) {
  require_nonnegative(a);
  const Eigen::Index n = a.rows();
  const Matrix pad = permute_rows(a, permutation) * d.asDiagonal();
  const Matrix f = minus_identity(pad);
  const FrobeniusForm form = frobenius_form(f);
  std::size_t chosen = form.class_count();
  double best = 0.0;
  for (std::size_t c = 0; c < form.class_count(); ++c) {
    if (form.is_trivial(c)) continue;
    const double rho = perron_root(f(form.classes[c], form.classes[c]));
    if (rho > best) {
      best = rho;
      chosen = c;
    }
  }
  if (chosen == form.class_count() || best < 1.0 - kDecisionTolerance)
    throw std::invalid_argument("singular_witness: rho(PAD - I) < 1, Omega(A) is regular");
  const auto& nodes = form.classes[chosen];
  const Matrix block = f(nodes, nodes);
  const double mu = cycle_means(block).mu;
  if (mu > 1.0 + 1e-9)
    throw std::logic_error("singular_witness: mu of the singular class exceeds 1; the assignment is not maximal");

  const double level = std::clamp(1.0, mu, best);
  const ScalingVector y = sum_visualize(block, level);
  const auto m = static_cast<Eigen::Index>(nodes.size());
  Matrix e = diagonal_similarity(block, y) + Matrix::Identity(m, m);
  e = e.cwiseMin(1.0);  // entries above 1 only by rounding
  const ComplexMatrix h = singular_row_matrix(e);
  const ComplexMatrix replaced = y.cast<Complex>().asDiagonal() * h * y.cwiseInverse().cast<Complex>().asDiagonal();

  ComplexMatrix g = pad.cast<Complex>();
  g(nodes, nodes) = replaced;
  // Restore the exact moduli of PAD on the class block before undoing P and D.
  for (Eigen::Index p = 0; p < m; ++p)
    for (Eigen::Index q = 0; q < m; ++q) {
      const Complex value = g(nodes[p], nodes[q]);
      const double modulus = pad(nodes[p], nodes[q]);
      g(nodes[p], nodes[q]) = std::abs(value) > 0.0 ? modulus * value / std::abs(value) : Complex(modulus);
    }
  ComplexMatrix w(n, n);
  const ComplexMatrix g_unscaled = g * d.cwiseInverse().cast<Complex>().asDiagonal();
  for (Eigen::Index i = 0; i < n; ++i) w.row(permutation[i]) = g_unscaled.row(i);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double modulus = std::abs(w(i, j));
      w(i, j) = modulus > 0.0 ? a(i, j) * w(i, j) / modulus : Complex(a(i, j));
    }
  return w;
}

bool m_matrix_check(const Matrix& a) {
  require_nonnegative(a);
  const auto assignment = max_product_assignment(a);
  if (!assignment) return false;
  const Matrix pa = permute_rows(a, row_order_from(assignment->column_of_row));
  const Vector diagonal = pa.diagonal();
  if ((diagonal.array() <= 0.0).any()) return false;
  Matrix off = pa;
  off.diagonal().setZero();
  // comp(PA) = D_c - N is a nonsingular M-matrix iff rho(D_c^{-1} N) < 1.
  return perron_root(diagonal.cwiseInverse().asDiagonal() * off) < 1.0 - kDecisionTolerance;
}

}  // namespace spectral_range
