#include "spectral_range/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace spectral_range::oracle {

namespace {

void guard(Eigen::Index n, const OracleBudget& budget, const char* what) {
  if (n > budget.max_n)
    throw BudgetExceeded(std::string(what) + ": n = " + std::to_string(n) + " exceeds max_n = " +
                         std::to_string(budget.max_n));
}

double geometric_mean(const std::vector<double>& weights) {
  double log_sum = 0.0;
  for (double w : weights) log_sum += std::log(w);
  return std::exp(log_sum / static_cast<double>(weights.size()));
}

struct CycleSearch {
  const Matrix& a;
  const OracleBudget& budget;
  CycleEnumeration& out;
  std::vector<int> path;
  std::vector<char> on_path;

  void extend(int start, int v) {
    for (int w = start; w < a.cols(); ++w) {
      if (a(v, w) == 0.0) continue;
      if (w == start) {
        std::vector<double> weights;
        for (std::size_t k = 0; k < path.size(); ++k) weights.push_back(a(path[k], path[(k + 1) % path.size()]));
        out.cycles.push_back(path);
        out.means.push_back(geometric_mean(weights));
        if (static_cast<long>(out.cycles.size()) > budget.max_cycles)
          throw BudgetExceeded("enumerate_cycle_means: more than max_cycles cycles");
      } else if (!on_path[w]) {
        on_path[w] = 1;
        path.push_back(w);
        extend(start, w);
        path.pop_back();
        on_path[w] = 0;
      }
    }
  }
};

}  // namespace

CycleEnumeration enumerate_cycle_means(const Matrix& a, const OracleBudget& budget) {
  guard(a.rows(), budget, "enumerate_cycle_means");
  CycleEnumeration out;
  CycleSearch search{a, budget, out, {}, std::vector<char>(a.rows(), 0)};
  for (int s = 0; s < a.rows(); ++s) {
    search.path = {s};
    search.on_path[s] = 1;
    search.extend(s, s);
    search.on_path[s] = 0;
  }
  if (!out.means.empty()) {
    out.mu = *std::max_element(out.means.begin(), out.means.end());
    out.nu = *std::min_element(out.means.begin(), out.means.end());
  }
  return out;
}

DiagonalProducts enumerate_diagonal_products(const RowUniformMatrix& b, const OracleBudget& budget) {
  guard(b.size(), budget, "enumerate_diagonal_products");
  const Matrix dense = b.dense();
  DiagonalProducts out;
  std::vector<int> sigma(b.size());
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    double product = 1.0;
    for (std::size_t i = 0; i < sigma.size(); ++i) product *= dense(i, sigma[i]);
    if (product != 0.0) {
      out.permutations.push_back(sigma);
      out.products.push_back(product);
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

SunflowerEnumeration enumerate_sunflowers(const RowUniformMatrix& b, const OracleBudget& budget) {
  guard(b.size(), budget, "enumerate_sunflowers");
  const auto n = static_cast<int>(b.size());
  std::vector<std::vector<int>> options(n);
  double total = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (b.support()(i, j)) options[i].push_back(j);
    total *= std::max<std::size_t>(options[i].size(), 1);
  }
  if (total > static_cast<double>(budget.max_cycles))
    throw BudgetExceeded("enumerate_sunflowers: product of out-degrees exceeds max_cycles");

  SunflowerEnumeration out;
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    SunflowerSubgraph s{std::vector<std::optional<int>>(n)};
    Matrix m = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
      if (!options[i].empty()) {
        s.out_edge[i] = options[i][pick[i]];
        m(i, options[i][pick[i]]) = b.row_value(i);
      }
    out.mu.push_back(enumerate_cycle_means(m, budget).mu);
    out.sunflowers.push_back(std::move(s));
    int i = 0;
    while (i < n && (options[i].empty() || ++pick[i] == options[i].size())) {
      pick[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
  out.max_mu = *std::max_element(out.mu.begin(), out.mu.end());
  out.min_mu = *std::min_element(out.mu.begin(), out.mu.end());
  return out;
}

Matrix random_aux_preimage(const RowUniformMatrix& b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  const Eigen::Index n = b.size();
  Matrix a = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
      if (b.support()(i, j)) sum += (a(i, j) = weight(rng));
    if (sum > 0.0) a.row(i) *= b.row_value(i) / sum;
  }
  return a;
}

ComplexMatrix random_complex_preimage(const RowUniformMatrix& b, std::uint64_t seed) {
  const Matrix moduli = random_aux_preimage(b, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  ComplexMatrix c(moduli.rows(), moduli.cols());
  for (Eigen::Index i = 0; i < c.rows(); ++i)
    for (Eigen::Index j = 0; j < c.cols(); ++j) c(i, j) = std::polar(moduli(i, j), angle(rng));
  return c;
}

Complex leibniz_determinant(const ComplexMatrix& c, const OracleBudget& budget) {
  guard(c.rows(), budget, "leibniz_determinant");
  std::vector<int> sigma(c.rows());
  std::iota(sigma.begin(), sigma.end(), 0);
  Complex det = 0.0;
  do {
    Complex product = 1.0;
    for (std::size_t i = 0; i < sigma.size(); ++i) product *= c(i, sigma[i]);
    int inversions = 0;
    for (std::size_t i = 0; i < sigma.size(); ++i)
      for (std::size_t j = i + 1; j < sigma.size(); ++j) inversions += sigma[i] > sigma[j];
    det += inversions % 2 == 0 ? product : -product;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return det;
}

Complex small_determinant(const ComplexMatrix& c) {
  const Eigen::Index n = c.rows();
  if (n != c.cols()) throw std::invalid_argument("small_determinant: matrix must be square");
  if (n > 12) throw BudgetExceeded("small_determinant: n exceeds 12");
  std::vector<std::vector<Complex>> m(n, std::vector<Complex>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m[i][j] = c(i, j);
  Complex det = 1.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pivot = k;
    for (Eigen::Index i = k + 1; i < n; ++i)
      if (std::abs(m[i][k]) > std::abs(m[pivot][k])) pivot = i;
    if (m[pivot][k] == Complex(0.0)) return 0.0;
    if (pivot != k) {
      std::swap(m[pivot], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const Complex factor = m[i][k] / m[k][k];
      for (Eigen::Index j = k; j < n; ++j) m[i][j] -= factor * m[k][j];
    }
  }
  return det;
}

ComplexVector small_eigenvalues(const ComplexMatrix& c, const OracleBudget& budget) {
  guard(c.rows(), budget, "small_eigenvalues");
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(c, false);
  return solver.eigenvalues();
}

SupportMask random_support(std::mt19937_64& rng, const RandomSupportOptions& options) {
  std::uniform_int_distribution<int> size(options.min_n, options.max_n);
  std::bernoulli_distribution edge(options.density);
  const int n = size(rng);
  SupportMask support(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) support(i, j) = edge(rng);
  if (options.irreducible) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (int k = 0; k < n; ++k) support(order[k], order[(k + 1) % n]) = true;
  }
  if (options.every_row_nonempty) {
    std::uniform_int_distribution<int> column(0, n - 1);
    for (int i = 0; i < n; ++i)
      if (!support.row(i).any()) support(i, column(rng)) = true;
  }
  return support;
}

RowUniformMatrix random_row_uniform(std::mt19937_64& rng, const RandomSupportOptions& options, double min_value,
                                    double max_value) {
  SupportMask support = random_support(rng, options);
  std::uniform_real_distribution<double> value(min_value, max_value);
  Vector values(support.rows());
  for (Eigen::Index i = 0; i < values.size(); ++i) values(i) = value(rng);
  return RowUniformMatrix(std::move(support), std::move(values));
}

Matrix random_nonnegative(std::mt19937_64& rng, const RandomSupportOptions& options, double min_value,
                          double max_value) {
  const SupportMask support = random_support(rng, options);
  std::uniform_real_distribution<double> value(min_value, max_value);
  Matrix a = Matrix::Zero(support.rows(), support.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (support(i, j)) a(i, j) = value(rng);
  return a;
}

}  // namespace spectral_range::oracle
