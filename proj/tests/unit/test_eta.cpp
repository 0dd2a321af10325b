#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "spectral_range/oracle.hpp"

using namespace spectral_range;
using spectral_range::testing::example_b;
using spectral_range::testing::rel_close;

namespace {

RowUniformMatrix swap_b() {
  Matrix a(2, 2);
  a << 0, 1, 1, 0;
  return aux(a);
}

RowUniformMatrix acyclic_b() {
  Matrix a = Matrix::Zero(3, 3);
  a(0, 1) = 2;
  a(0, 2) = 2;
  a(1, 2) = 1;
  return aux(a);
}

void expect_realization(const RowUniformMatrix& b, const PerronRealization& r, double target) {
  EXPECT_TRUE(aux(r.matrix).approx_equal(b, 1e-9));
  EXPECT_LE(std::abs(perron_root(r.matrix) - target), 1e-6 * std::max(target, 1.0));
  EXPECT_TRUE((r.matrix.array() >= 0).all());
}

Clause clause_of(const RowUniformMatrix& b, double target) {
  try {
    realize_perron_root(b, target);
  } catch (const InfeasibleError& e) {
    return e.clause();
  }
  ADD_FAILURE() << "target " << target << " accepted";
  return Clause::SumVisualizationRange;
}

}  // namespace

TEST(DescribeEta, ExampleBIsOpenInterval) {
  const PerronRange r = describe_eta(example_b());
  EXPECT_TRUE(rel_close(r.lower, std::sqrt(6.0), 1e-12));
  EXPECT_TRUE(rel_close(r.upper, 4, 1e-12));
  EXPECT_FALSE(r.lower_attained);
  EXPECT_FALSE(r.upper_attained);
  EXPECT_FALSE(r.degenerate);
  EXPECT_TRUE(r.contains(3));
  EXPECT_FALSE(r.contains(4));
  EXPECT_FALSE(r.contains(std::sqrt(6.0)));
}

TEST(DescribeEta, DegenerateCases) {
  const PerronRange one = describe_eta(swap_b());
  EXPECT_TRUE(one.degenerate);
  EXPECT_NEAR(one.lower, 1, 1e-14);
  EXPECT_TRUE(one.lower_attained && one.upper_attained);
  const PerronRange zero = describe_eta(acyclic_b());
  EXPECT_TRUE(zero.degenerate);
  EXPECT_EQ(zero.upper, 0);
  EXPECT_TRUE(zero.contains(0));
}

TEST(DescribeEta, ReducibleAttainedEndpoints) {
  // Final class {1} has a self-loop of 5, so both endpoints are 5 and attained.
  const PerronRange r = describe_eta(spectral_range::testing::reducible_b());
  EXPECT_TRUE(r.degenerate);
  EXPECT_NEAR(r.upper, 5, 1e-12);

  // Final classes: a balanced 2-cycle at 2 and an unbalanced class with nu = 1, mu = 3.
  Matrix a = Matrix::Zero(5, 5);
  a(0, 1) = 2; a(1, 0) = 2;
  a(2, 3) = 9; a(3, 2) = 0.5; a(3, 3) = 0.5;
  a(4, 0) = 1; a(4, 2) = 1; a(4, 4) = 1;
  const PerronRange mixed = describe_eta(aux(a));
  EXPECT_NEAR(mixed.lower, 2, 1e-12);
  EXPECT_NEAR(mixed.upper, 3, 1e-12);
  EXPECT_TRUE(mixed.lower_attained);
  EXPECT_FALSE(mixed.upper_attained);
  EXPECT_EQ(realize_perron_root(aux(a), 2).path, RealizationPath::LowerEndpoint);
  EXPECT_NEAR(perron_root(realize_perron_root(aux(a), 2).matrix), 2, 1e-6);
}

TEST(DescribeEta, IrreducibleMatchesCycleMeans) {
  std::mt19937_64 rng(17);
  oracle::RandomSupportOptions options;
  options.irreducible = true;
  for (int trial = 0; trial < 60; ++trial) {
    const RowUniformMatrix b = oracle::random_row_uniform(rng, options);
    const CycleMeanReport means = cycle_means(b.dense());
    const PerronRange r = describe_eta(b);
    EXPECT_TRUE(rel_close(r.lower, means.nu, 1e-12));
    EXPECT_TRUE(rel_close(r.upper, means.mu, 1e-12));
    const bool balanced = means.nu >= means.mu * (1 - 1e-12);
    EXPECT_EQ(r.degenerate, balanced);
    EXPECT_EQ(r.lower_attained, balanced);
    EXPECT_EQ(r.upper_attained, balanced);
  }
}

TEST(RealizePerronRoot, ExampleBTargetThree) {
  const RowUniformMatrix b = example_b();
  const PerronRealization r = realize_perron_root(b, 3);
  expect_realization(b, r, 3);
  ASSERT_TRUE(r.closed_form.has_value());
  const SingleRowBlend& blend = *r.closed_form;
  EXPECT_NEAR(blend.y, 1.4, 1e-9);
  Vector x(5);
  x << 1, 3.0 / 8, 2.0 / 3, 3.0 / 8, 3.0 / 8;
  EXPECT_LE((blend.eigenvector - x).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LE((blend.matrix * blend.eigenvector - 3 * blend.eigenvector).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(RealizePerronRoot, ClosedFormFollowsFormula) {
  for (double rho : {2.5, 2.8, 3.3, 3.9}) {
    const auto blend = solve_single_row_blend(example_b(), rho);
    ASSERT_TRUE(blend.has_value());
    EXPECT_NEAR(blend->y, (16 - rho * rho) / 5, 1e-12);
    EXPECT_NEAR(perron_root(blend->matrix), rho, 1e-10);
  }
  EXPECT_FALSE(solve_single_row_blend(example_b(), 4.5).has_value());
}

TEST(RealizePerronRoot, DegenerateAndAcyclic) {
  const PerronRealization one = realize_perron_root(swap_b(), 1);
  EXPECT_EQ(one.path, RealizationPath::Degenerate);
  EXPECT_TRUE(one.matrix.isApprox(swap_b().dense()));
  const PerronRealization zero = realize_perron_root(acyclic_b(), 0);
  EXPECT_TRUE(zero.matrix.isApprox(acyclic_b().uniform_split()));
  EXPECT_EQ(perron_root(zero.matrix), 0.0);
}

TEST(RealizePerronRoot, InfeasibleTargetsNameTheClause) {
  const RowUniformMatrix b = example_b();
  EXPECT_EQ(clause_of(b, 4.5), Clause::AboveUpperBound);
  EXPECT_EQ(clause_of(b, 4.0), Clause::UpperEndpointNotAttained);
  EXPECT_EQ(clause_of(b, std::sqrt(6.0)), Clause::LowerEndpointNotAttained);
  EXPECT_EQ(clause_of(b, 1.0), Clause::BelowLowerBound);
  EXPECT_EQ(clause_of(swap_b(), 1.5), Clause::OutsideDegenerateRange);
  EXPECT_EQ(clause_of(acyclic_b(), 1.0), Clause::AboveUpperBound);
}

TEST(RealizePerronRoot, ZeroNeedsAcyclicGraph) {
  // A final class that is a trivial node gives m = 0 without being attainable.
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1;
  a(0, 1) = 1;
  const RowUniformMatrix b = aux(a);
  const PerronRange r = describe_eta(b);
  EXPECT_EQ(r.lower, 0);
  EXPECT_FALSE(r.lower_attained);
  EXPECT_EQ(clause_of(b, 0.0), Clause::ZeroRequiresAcyclic);
}

TEST(RealizePerronRoot, RandomInteriorTargets) {
  std::mt19937_64 rng(2718);
  int realized = 0;
  while (realized < 50) {
    const RowUniformMatrix b = oracle::random_row_uniform(rng, {});
    const PerronRange r = describe_eta(b);
    if (r.degenerate || r.upper - r.lower < 1e-6 * r.upper) continue;
    for (double f : {0.05, 0.3, 0.5, 0.7, 0.95}) {
      const double target = r.lower + f * (r.upper - r.lower);
      expect_realization(b, realize_perron_root(b, target), target);
      ++realized;
    }
  }
}

TEST(RealizePerronRoot, AttainedEndpoints) {
  std::mt19937_64 rng(99);
  oracle::RandomSupportOptions options;
  options.every_row_nonempty = false;
  int upper = 0, lower = 0;
  for (int trial = 0; trial < 400 && (upper < 5 || lower < 5); ++trial) {
    const RowUniformMatrix b = oracle::random_row_uniform(rng, options);
    const PerronRange r = describe_eta(b);
    if (r.degenerate) continue;
    if (r.upper_attained) {
      expect_realization(b, realize_perron_root(b, r.upper), r.upper);
      ++upper;
    }
    if (r.lower_attained) {
      expect_realization(b, realize_perron_root(b, r.lower), r.lower);
      ++lower;
    }
  }
  EXPECT_GT(upper + lower, 0);
}

TEST(EtaSoundness, PreimagesStayInsideRange) {
  std::mt19937_64 rng(4242);
  for (int instance = 0; instance < 20; ++instance) {
    const RowUniformMatrix b = oracle::random_row_uniform(rng, {});
    const PerronRange r = describe_eta(b);
    for (int sample = 0; sample < 100; ++sample) {
      const double rho = perron_root(oracle::random_aux_preimage(b, rng()));
      EXPECT_GE(rho, r.lower - 1e-9);
      EXPECT_LE(rho, r.upper + 1e-9);
      if (!r.upper_attained) EXPECT_LT(rho, r.upper - 1e-9 * std::max(r.upper, 1.0));
      if (!r.lower_attained) EXPECT_GT(rho, r.lower + 1e-9 * std::max(r.lower, 1.0));
    }
  }
}

TEST(EtaSoundness, ExampleBSamplesInOpenInterval) {
  const RowUniformMatrix b = example_b();
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const double rho = perron_root(oracle::random_aux_preimage(b, seed));
    EXPECT_GT(rho, std::sqrt(6.0));
    EXPECT_LT(rho, 4.0);
  }
}
