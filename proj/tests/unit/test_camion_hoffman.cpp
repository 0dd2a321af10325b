#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "spectral_range/oracle.hpp"

using namespace spectral_range;

namespace {

Matrix m2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

double max_diagonal_product(const Matrix& a) {
  const auto assignment = max_product_assignment(a);
  return assignment ? assignment->product : 0.0;
}

void expect_valid_witness(const Matrix& a, const ComplexMatrix& w) {
  ASSERT_EQ(w.rows(), a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) EXPECT_NEAR(std::abs(w(i, j)), a(i, j), 1e-12 * std::max(a(i, j), 1.0));
  EXPECT_LE(std::abs(oracle::leibniz_determinant(w)), 1e-8 * max_diagonal_product(a));
}

Matrix permuted_scaled(const Matrix& a, const RegularityVerdict& v) {
  const Matrix pa = a(v.permutation, Eigen::all);
  return pa * v.unit_diagonal_scaling.asDiagonal();
}

void expect_valid_certificate(const Matrix& a, const RegularityVerdict& v) {
  ASSERT_TRUE(v.certificate.has_value());
  const Matrix padz = permuted_scaled(a, v) * v.certificate->dominance_scaling.asDiagonal();
  EXPECT_GT(v.certificate->margin, 0);
  for (Eigen::Index i = 0; i < padz.rows(); ++i) EXPECT_GT(padz(i, i), padz.row(i).sum() - padz(i, i));
}

}  // namespace

TEST(Assignment, Examples) {
  const auto id = max_product_assignment(m2(2, 1, 1, 2));
  ASSERT_TRUE(id);
  EXPECT_EQ(id->column_of_row, (std::vector<int>{0, 1}));
  EXPECT_DOUBLE_EQ(id->product, 4);
  const auto swap = max_product_assignment(m2(0, 1, 1, 0));
  ASSERT_TRUE(swap);
  EXPECT_EQ(swap->column_of_row, (std::vector<int>{1, 0}));
  EXPECT_FALSE(max_product_assignment(m2(0, 1, 0, 2)));
}

TEST(Assignment, MatchesEnumeration) {
  std::mt19937_64 rng(88);
  oracle::RandomSupportOptions options;
  options.max_n = 6;
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix a = oracle::random_nonnegative(rng, options);
    const auto products = oracle::enumerate_diagonal_products(aux(a));
    double best = 0;
    for (const auto& perm : products.permutations) {
      double p = 1;
      for (std::size_t i = 0; i < perm.size(); ++i) p *= a(i, perm[i]);
      best = std::max(best, p);
    }
    const auto assignment = max_product_assignment(a);
    EXPECT_EQ(assignment.has_value(), products.count() > 0);
    if (assignment) EXPECT_NEAR(assignment->product, best, 1e-12 * best);
  }
}

TEST(Decide, Anchors) {
  const RegularityVerdict dominant = decide(m2(2, 1, 1, 2));
  EXPECT_TRUE(dominant.regular);
  EXPECT_NEAR(dominant.test_radius, 0.5, 1e-12);
  expect_valid_certificate(m2(2, 1, 1, 2), dominant);
  EXPECT_FALSE(dominant.witness);

  const RegularityVerdict ones = decide(m2(1, 1, 1, 1));
  EXPECT_FALSE(ones.regular);
  EXPECT_TRUE(ones.boundary);
  EXPECT_NEAR(ones.test_radius, 1, 1e-12);
  ASSERT_TRUE(ones.witness);
  expect_valid_witness(m2(1, 1, 1, 1), *ones.witness);

  const RegularityVerdict none = decide(m2(0, 1, 0, 2));
  EXPECT_FALSE(none.regular);
  ASSERT_TRUE(none.witness);
  EXPECT_TRUE(none.witness->real().isApprox(m2(0, 1, 0, 2)));
}

TEST(Decide, LargeOffDiagonalPicksTheSwap) {
  // The anti-diagonal carries the larger product, so P swaps the rows and PAD is dominant.
  const Matrix a = m2(1, 2, 2, 1);
  const RegularityVerdict v = decide(a);
  EXPECT_TRUE(v.regular);
  EXPECT_EQ(v.permutation, (std::vector<int>{1, 0}));
  EXPECT_NEAR(v.test_radius, 0.5, 1e-12);
}

TEST(Decide, LargeOffDiagonalSingular) {
  Matrix a(3, 3);
  a << 1, 2, 2, 2, 1, 2, 2, 2, 1;
  const RegularityVerdict v = decide(a);
  EXPECT_FALSE(v.regular);
  EXPECT_NEAR(v.test_radius, 1.5, 1e-12);
  ASSERT_TRUE(v.witness);
  expect_valid_witness(a, *v.witness);
}

TEST(Decide, ReducibleSingularClassLeavesOtherRowsReal) {
  Matrix a(3, 3);
  a << 1, 1, 0, 1, 1, 0, 0.5, 0.25, 4;
  const RegularityVerdict v = decide(a);
  EXPECT_FALSE(v.regular);
  ASSERT_TRUE(v.witness);
  expect_valid_witness(a, *v.witness);
}

TEST(Decide, AgreesWithMMatrixCheck) {
  std::mt19937_64 rng(200);
  oracle::RandomSupportOptions options;
  options.max_n = 5;
  options.density = 0.6;
  int regular = 0, singular = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Matrix a = oracle::random_nonnegative(rng, options, 0.0, 2.0);
    const RegularityVerdict v = decide(a);
    EXPECT_EQ(v.regular, m_matrix_check(a));
    EXPECT_EQ(v.certificate.has_value(), v.regular);
    EXPECT_EQ(v.witness.has_value(), !v.regular);
    if (v.regular) {
      expect_valid_certificate(a, v);
      ++regular;
    } else {
      expect_valid_witness(a, *v.witness);
      ++singular;
    }
  }
  EXPECT_GT(regular, 20);
  EXPECT_GT(singular, 20);
}

TEST(Decide, RegularImpliesOneOutsideSigma) {
  std::mt19937_64 rng(201);
  oracle::RandomSupportOptions options;
  options.max_n = 5;
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 50; ++trial) {
    Matrix a = oracle::random_nonnegative(rng, options);
    a.diagonal().array() += 2.0;
    const RegularityVerdict v = decide(a);
    if (!v.regular) continue;
    const Vector& z = v.certificate->dominance_scaling;
    const Matrix scaled = z.cwiseInverse().asDiagonal() * permuted_scaled(a, v) * z.asDiagonal();
    const Matrix off = scaled - Matrix::Identity(a.rows(), a.cols());
    if ((off.array() == 0).all()) continue;
    EXPECT_FALSE(sigma_describe(aux(off.cwiseAbs())).contains(1.0));
    ++checked;
  }
  EXPECT_EQ(checked, 50);
}

TEST(ClosePolygon, Examples) {
  Vector two(2);
  two << 1, 1;
  const ComplexVector c = close_polygon(two);
  EXPECT_NEAR(std::abs(c.sum()), 0, 1e-12);
  Vector triangle(3);
  triangle << 3, 4, 5;
  const ComplexVector t = close_polygon(triangle);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(std::abs(t(i)), triangle(i), 1e-12 * triangle(i));
  EXPECT_LE(std::abs(t.sum()), 1e-12 * 12);
  Vector bad(3);
  bad << 5, 1, 1;
  EXPECT_THROW(close_polygon(bad), std::invalid_argument);
}

TEST(ClosePolygon, RandomFeasibleLengths) {
  std::mt19937_64 rng(1000);
  std::uniform_int_distribution<int> size(2, 10);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = size(rng);
    Vector lengths(n);
    for (int i = 0; i < n; ++i) lengths(i) = unit(rng) < 0.1 ? 0.0 : unit(rng);
    for (int fix = 0; fix < 50; ++fix) {
      Eigen::Index top;
      const double largest = lengths.maxCoeff(&top);
      const double rest = lengths.sum() - largest;
      if (largest <= rest) break;
      lengths(top) = rest * (unit(rng) < 0.2 ? 1.0 : unit(rng));
    }
    const ComplexVector c = close_polygon(lengths);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(std::abs(c(i)), lengths(i), 1e-12 * std::max(lengths(i), 1e-300));
    EXPECT_LE(std::abs(c.sum()), 1e-12 * lengths.sum() + 1e-300);
  }
}

TEST(SingularRowMatrix, Examples) {
  const ComplexMatrix c = singular_row_matrix(m2(1, 1, 1, 1));
  EXPECT_LE(c.rowwise().sum().cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_TRUE(c.cwiseAbs().isApprox(m2(1, 1, 1, 1)));
  const ComplexMatrix three = singular_row_matrix(Matrix::Ones(3, 3));
  EXPECT_LE(three.rowwise().sum().cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE(std::abs(oracle::small_determinant(three)), 1e-12);
  EXPECT_THROW(singular_row_matrix(m2(1, 0.5, 0.5, 1)), std::invalid_argument);
}

TEST(MMatrixCheck, Examples) {
  EXPECT_TRUE(m_matrix_check(m2(2, 1, 1, 2)));
  EXPECT_FALSE(m_matrix_check(m2(1, 1, 1, 1)));
  EXPECT_FALSE(m_matrix_check(m2(0, 1, 0, 2)));
}
