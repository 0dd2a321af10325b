#include <gtest/gtest.h>

#include <limits>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "spectral_range/oracle.hpp"

using namespace spectral_range;
using spectral_range::testing::example_b;
using spectral_range::testing::rel_close;

namespace {

Matrix swap2() {
  Matrix a(2, 2);
  a << 0, 8, 2, 0;
  return a;
}

// A1: sunflower of example B through the 1-2 cycle; A2: through the 2-5 cycle.
Matrix a1() {
  Matrix a = Matrix::Zero(5, 5);
  a(0, 1) = 8; a(1, 0) = 2; a(2, 0) = 2; a(3, 1) = 3; a(4, 1) = 3;
  return a;
}

Matrix a2() {
  Matrix a = Matrix::Zero(5, 5);
  a(0, 1) = 8; a(1, 4) = 2; a(2, 0) = 2; a(3, 1) = 3; a(4, 1) = 3;
  return a;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST(CycleMeans, ExampleB) {
  const CycleMeanReport r = cycle_means(example_b().dense());
  EXPECT_TRUE(r.has_cycle);
  EXPECT_TRUE(rel_close(r.mu, 4.0, 1e-12));
  EXPECT_TRUE(rel_close(r.nu, std::sqrt(6.0), 1e-12));
}

TEST(CycleMeans, SingleCycleAndAcyclic) {
  const CycleMeanReport r = cycle_means(swap2());
  EXPECT_NEAR(r.mu, 4, 1e-14);
  EXPECT_NEAR(r.nu, 4, 1e-14);
  Matrix upper = Matrix::Zero(3, 3);
  upper(0, 1) = upper(0, 2) = upper(1, 2) = 5;
  const CycleMeanReport acyclic = cycle_means(upper);
  EXPECT_FALSE(acyclic.has_cycle);
  EXPECT_EQ(acyclic.mu, 0);
  EXPECT_EQ(acyclic.nu, 0);
}

TEST(CycleMeans, AgreesWithEnumeration) {
  std::mt19937_64 rng(2024);
  oracle::RandomSupportOptions options;
  options.max_n = 7;
  int compared = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const Matrix a = oracle::random_nonnegative(rng, options, 0.05, 4.0);
    const auto expected = oracle::enumerate_cycle_means(a);
    const CycleMeanReport r = cycle_means(a);
    EXPECT_EQ(r.has_cycle, !expected.cycles.empty());
    if (expected.cycles.empty()) continue;
    ++compared;
    EXPECT_TRUE(rel_close(r.mu, expected.mu, 1e-10)) << r.mu << " vs " << expected.mu;
    EXPECT_TRUE(rel_close(r.nu, expected.nu, 1e-10)) << r.nu << " vs " << expected.nu;
  }
  EXPECT_GT(compared, 100);
}

TEST(CycleMeans, HadamardInverseSwapsBounds) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = oracle::random_nonnegative(rng, {});
    const CycleMeanReport r = cycle_means(a);
    if (!r.has_cycle) continue;
    EXPECT_TRUE(rel_close(cycle_means(hadamard_inverse(a)).mu, 1.0 / r.nu, 1e-10));
  }
}

// Cycles 1-2 and 1-3 both have mean 4; cycles 2-5 and 2-4 both have mean sqrt(6).
TEST(CriticalGraph, ExampleB) {
  const CriticalGraph crit = critical_graph(example_b().dense(), Level::Max);
  EXPECT_EQ(crit.nodes, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(crit.edges.size(), 4u);
  EXPECT_TRUE(crit.has_edge(0, 1));
  EXPECT_TRUE(crit.has_edge(1, 0));
  EXPECT_TRUE(crit.has_edge(0, 2));
  EXPECT_TRUE(crit.has_edge(2, 0));
  EXPECT_EQ(crit.strict_nodes, (std::vector<int>{2}));

  const CriticalGraph anti = critical_graph(example_b().dense(), Level::Min);
  EXPECT_EQ(anti.nodes, (std::vector<int>{1, 3, 4}));
  EXPECT_TRUE(anti.has_edge(1, 4));
  EXPECT_TRUE(anti.has_edge(4, 1));
  EXPECT_TRUE(anti.has_edge(1, 3));
  EXPECT_TRUE(anti.has_edge(3, 1));
  EXPECT_EQ(anti.edges.size(), 4u);
  EXPECT_EQ(anti.strict_nodes, (std::vector<int>{4}));
}

TEST(CriticalGraph, WholeCycleIsStrict) {
  const CriticalGraph crit = critical_graph(swap2(), Level::Max);
  EXPECT_EQ(crit.strict_nodes, (std::vector<int>{0, 1}));
  EXPECT_EQ(crit.edges.size(), 2u);
}

TEST(CriticalGraph, AcyclicIsRejected) {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 1) = 1;
  EXPECT_THROW(critical_graph(a, Level::Max), std::invalid_argument);
}

TEST(CriticalGraph, EdgesLieOnOptimalEnumeratedCycles) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const Matrix a = oracle::random_nonnegative(rng, {});
    const auto cycles = oracle::enumerate_cycle_means(a);
    if (cycles.cycles.empty()) continue;
    for (Level level : {Level::Max, Level::Min}) {
      const double target = level == Level::Max ? cycles.mu : cycles.nu;
      std::set<std::pair<int, int>> optimal;
      for (std::size_t k = 0; k < cycles.cycles.size(); ++k) {
        if (!rel_close(cycles.means[k], target, 1e-9)) continue;
        const auto& c = cycles.cycles[k];
        for (std::size_t p = 0; p < c.size(); ++p) optimal.insert({c[p], c[(p + 1) % c.size()]});
      }
      const CriticalGraph crit = critical_graph(a, level);
      const std::set<std::pair<int, int>> found(crit.edges.begin(), crit.edges.end());
      EXPECT_EQ(found, optimal);
    }
  }
}

TEST(KleeneStar, TwoNodeCycle) {
  MaxPlusMatrix g(2, 2);
  g << -kInf, std::log(2.0), -std::log(2.0), -kInf;
  const MaxPlusMatrix star = kleene_star_maxplus(g);
  EXPECT_NEAR(star(0, 0), 0, 1e-15);
  EXPECT_NEAR(star(1, 1), 0, 1e-15);
  EXPECT_NEAR(star(0, 1), std::log(2.0), 1e-15);
  EXPECT_NEAR(star(1, 0), -std::log(2.0), 1e-15);
}

TEST(KleeneStar, EmptyGraphGivesIdentity) {
  const MaxPlusMatrix star = kleene_star_maxplus(MaxPlusMatrix::Constant(3, 3, -kInf));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(star(i, j), i == j ? 0.0 : -kInf);
}

TEST(KleeneStar, PositiveCycleDiverges) {
  MaxPlusMatrix g = MaxPlusMatrix::Constant(2, 2, -kInf);
  g(0, 1) = 0.05;
  g(1, 0) = 0.05;
  EXPECT_THROW(kleene_star_maxplus(g), std::domain_error);
}

TEST(PerronRoot, Examples) {
  EXPECT_NEAR(perron_root(swap2()), 4, 1e-12);
  EXPECT_NEAR(perron_root(a1()), 4, 1e-12);
  EXPECT_NEAR(perron_root(a2()), std::sqrt(6.0), 1e-12);
  Matrix nil = Matrix::Zero(3, 3);
  nil(0, 1) = 2;
  nil(1, 2) = 3;
  EXPECT_EQ(perron_root(nil), 0.0);
}

TEST(PerronRoot, BoundsAgainstAux) {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix a = oracle::random_nonnegative(rng, {});
    const double rho = perron_root(a);
    const CycleMeanReport own = cycle_means(a);
    const CycleMeanReport bounds = cycle_means(aux(a).dense());
    const double scale = std::max(rho, 1.0);
    EXPECT_LE(own.mu, rho + 1e-10 * scale);
    EXPECT_LE(rho, bounds.mu + 1e-10 * scale);
    if (is_irreducible(a)) {
      EXPECT_GE(rho, bounds.nu - 1e-10 * scale);
      if (bounds.nu < bounds.mu * (1 - 1e-9)) {
        EXPECT_LT(rho, bounds.mu);
        EXPECT_GT(rho, bounds.nu);
      }
    }
    const Vector sums = a.rowwise().sum();
    if (is_irreducible(a)) EXPECT_GE(rho, sums.minCoeff() - 1e-10 * scale);
    EXPECT_LE(rho, sums.maxCoeff() + 1e-10 * scale);
    const double reference = oracle::small_eigenvalues(a.cast<Complex>()).cwiseAbs().maxCoeff();
    EXPECT_NEAR(rho, reference, 1e-8 * scale);
  }
}

TEST(PerronVector, Examples) {
  const Vector x = perron_vector(swap2());
  EXPECT_NEAR(x(0), 1, 1e-12);
  EXPECT_NEAR(x(1), 0.5, 1e-12);

  Matrix ds(3, 3);
  ds << 0.2, 0.5, 0.3, 0.3, 0.2, 0.5, 0.5, 0.3, 0.2;
  EXPECT_TRUE(perron_vector(ds).isApprox(Vector::Ones(3), 1e-12));

  Matrix reducible = Matrix::Zero(2, 2);
  reducible(0, 0) = reducible(0, 1) = 1;
  EXPECT_THROW(perron_vector(reducible), std::invalid_argument);
}

TEST(PerronVector, BlendedRowSystem) {
  // Example B with row 2 split as 2 - y toward node 1 and y toward node 5, y = 7/5.
  Matrix a = Matrix::Zero(5, 5);
  a(0, 1) = 8; a(1, 0) = 0.6; a(1, 4) = 1.4; a(2, 0) = 2; a(3, 1) = 3; a(4, 1) = 3;
  EXPECT_NEAR(perron_root(a), 3, 1e-12);
  Vector x(5);
  x << 1, 3.0 / 8, 2.0 / 3, 3.0 / 8, 3.0 / 8;
  EXPECT_LE((a * x - 3 * x).cwiseAbs().maxCoeff(), 1e-15);
  // On the cycle block {1, 2, 5} the Perron vector is the restriction of x.
  const std::vector<int> block{0, 1, 4};
  EXPECT_LE((perron_vector(principal_submatrix(a, block)) - x(block)).cwiseAbs().maxCoeff(), 1e-12);
}
