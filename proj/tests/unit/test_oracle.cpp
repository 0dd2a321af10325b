#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "spectral_range/oracle.hpp"

using namespace spectral_range;
using spectral_range::testing::example_b;

TEST(OracleCycles, ExampleBExtremeCycles) {
  const auto e = oracle::enumerate_cycle_means(example_b().dense());
  EXPECT_NEAR(e.mu, 4, 1e-12);
  EXPECT_NEAR(e.nu, std::sqrt(6.0), 1e-12);
  for (std::size_t k = 0; k < e.cycles.size(); ++k) {
    const auto& c = e.cycles[k];
    if (std::abs(e.means[k] - 4) < 1e-12)
      EXPECT_TRUE(c == (std::vector<int>{0, 1}) || c == (std::vector<int>{0, 2}));
    if (std::abs(e.means[k] - std::sqrt(6.0)) < 1e-12)
      EXPECT_TRUE(c == (std::vector<int>{1, 4}) || c == (std::vector<int>{1, 3}));
  }
}

TEST(OracleCycles, TriangleOfOnes) {
  Matrix a = Matrix::Zero(3, 3);
  a(0, 1) = a(1, 2) = a(2, 0) = 1;
  const auto e = oracle::enumerate_cycle_means(a);
  EXPECT_EQ(e.cycles.size(), 1u);
  EXPECT_EQ(e.mu, 1);
  EXPECT_EQ(e.nu, 1);
}

TEST(OracleCycles, BudgetGuard) {
  EXPECT_THROW(oracle::enumerate_cycle_means(Matrix::Ones(8, 8)), oracle::BudgetExceeded);
  oracle::OracleBudget budget;
  budget.max_cycles = 10;
  EXPECT_THROW(oracle::enumerate_cycle_means(Matrix::Ones(6, 6), budget), oracle::BudgetExceeded);
}

TEST(OracleDiagonalProducts, Counts) {
  EXPECT_EQ(oracle::enumerate_diagonal_products(aux(Matrix::Identity(3, 3))).count(), 1u);
  EXPECT_EQ(oracle::enumerate_diagonal_products(aux(Matrix::Ones(3, 3))).count(), 6u);
}

TEST(OracleSunflowers, Examples) {
  Matrix swap(2, 2);
  swap << 0, 1, 1, 0;
  EXPECT_EQ(oracle::enumerate_sunflowers(aux(swap)).sunflowers.size(), 1u);
  const auto b = oracle::enumerate_sunflowers(example_b());
  EXPECT_NEAR(b.max_mu, 4, 1e-12);
  EXPECT_NEAR(b.min_mu, std::sqrt(6.0), 1e-12);
  Matrix star = Matrix::Zero(4, 4);
  star(0, 0) = 1;
  star(1, 0) = star(1, 2) = star(2, 0) = star(3, 0) = star(3, 1) = 1;
  const auto all = oracle::enumerate_sunflowers(aux(star));
  EXPECT_EQ(all.sunflowers.size(), 4u);
  for (const auto& s : all.sunflowers) EXPECT_EQ(s.cycles(), (std::vector<std::vector<int>>{{0}}));
}

TEST(OraclePreimage, RoundTripsAndIsSeeded) {
  const RowUniformMatrix b = example_b();
  const Matrix a = oracle::random_aux_preimage(b, 7);
  EXPECT_TRUE(aux(a).approx_equal(b, 1e-12));
  EXPECT_EQ(a, oracle::random_aux_preimage(b, 7));
  EXPECT_NE(a, oracle::random_aux_preimage(b, 8));
  EXPECT_DOUBLE_EQ(a(2, 0), 2.0);
  EXPECT_TRUE(aux_complex(oracle::random_complex_preimage(b, 3)).approx_equal(b, 1e-12));
}

TEST(OracleDeterminant, Examples) {
  EXPECT_NEAR(std::abs(oracle::small_determinant(ComplexMatrix::Identity(4, 4)) - 1.0), 0, 1e-15);
  ComplexMatrix c(2, 2);
  c << 1, 1, -1, -1;
  EXPECT_EQ(std::abs(oracle::small_determinant(c)), 0.0);
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  ComplexMatrix r(4, 4);
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) r(i, j) = Complex(g(rng), g(rng));
  const Complex lu = r.partialPivLu().determinant();
  EXPECT_NEAR(std::abs(oracle::small_determinant(r) - lu), 0, 1e-12 * std::abs(lu));
  EXPECT_NEAR(std::abs(oracle::leibniz_determinant(r) - lu), 0, 1e-12 * std::abs(lu));
  ComplexMatrix structural = ComplexMatrix::Zero(3, 3);
  structural.col(0) = r.col(0).head(3);
  structural(2, 1) = 0.3;
  structural(2, 2) = 1.7;
  EXPECT_EQ(oracle::leibniz_determinant(structural), Complex(0, 0));
  EXPECT_THROW(oracle::small_determinant(ComplexMatrix::Identity(13, 13)), oracle::BudgetExceeded);
}

TEST(OracleGenerators, SeededDeterminism) {
  std::mt19937_64 a(5), b(5);
  oracle::RandomSupportOptions options;
  options.irreducible = true;
  for (int k = 0; k < 20; ++k) {
    const RowUniformMatrix x = oracle::random_row_uniform(a, options);
    const RowUniformMatrix y = oracle::random_row_uniform(b, options);
    EXPECT_TRUE(x.approx_equal(y, 0));
    EXPECT_TRUE(is_irreducible(x));
  }
}
