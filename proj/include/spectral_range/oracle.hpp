#pragma once

// Brute-force reference implementations. They evaluate defining formulas directly and
// share no code with the algorithms they are used to check. Test-facing only.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "spectral_range/sigma.hpp"
#include "spectral_range/sunflower.hpp"

namespace spectral_range::oracle {

struct OracleBudget {
  int max_n = 7;
  long max_cycles = 200000;  // also caps the number of sunflowers
  std::uint64_t rng_seed = 0x5eedULL;
};

class BudgetExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct CycleEnumeration {
  double mu = 0.0;
  double nu = 0.0;
  std::vector<std::vector<int>> cycles;  // each starts at its smallest node
  std::vector<double> means;
};

/// Every simple cycle of the support (DFS), with geometric means (prod a)^(1/length).
CycleEnumeration enumerate_cycle_means(const Matrix& a, const OracleBudget& budget = {});

struct DiagonalProducts {
  std::vector<std::vector<int>> permutations;  // sigma with prod b_{i sigma(i)} != 0
  std::vector<double> products;
  std::size_t count() const { return permutations.size(); }
};

/// All n! permutations.
DiagonalProducts enumerate_diagonal_products(const RowUniformMatrix& b, const OracleBudget& budget = {});

struct SunflowerEnumeration {
  std::vector<SunflowerSubgraph> sunflowers;
  std::vector<double> mu;  // maximal cycle mean of each (0 without cycles)
  double max_mu = 0.0;
  double min_mu = 0.0;
};

/// Cartesian product of per-node out-edge choices.
SunflowerEnumeration enumerate_sunflowers(const RowUniformMatrix& b, const OracleBudget& budget = {});

/// Per row, independent uniform(0.05, 1) weights on the support scaled to the row value.
Matrix random_aux_preimage(const RowUniformMatrix& b, std::uint64_t seed);

/// Complex preimage: random_aux_preimage moduli with uniform random phases.
ComplexMatrix random_complex_preimage(const RowUniformMatrix& b, std::uint64_t seed);

/// Gaussian elimination with partial pivoting, written out by hand. n <= 12.
Complex small_determinant(const ComplexMatrix& c);

/// Leibniz expansion over all n! permutations. Exactly 0 when every generalized
/// diagonal product vanishes. n <= max_n.
Complex leibniz_determinant(const ComplexMatrix& c, const OracleBudget& budget = {});

/// All eigenvalues of a small complex matrix (dense QR iteration from Eigen).
ComplexVector small_eigenvalues(const ComplexMatrix& c, const OracleBudget& budget = {});

/// Seeded instance generators shared by the test suites and the CLI diagnostics.
struct RandomSupportOptions {
  int min_n = 2;
  int max_n = 6;
  double density = 0.4;
  bool irreducible = false;  // add a Hamiltonian cycle through a random order
  bool every_row_nonempty = true;
};

SupportMask random_support(std::mt19937_64& rng, const RandomSupportOptions& options);
RowUniformMatrix random_row_uniform(std::mt19937_64& rng, const RandomSupportOptions& options,
                                    double min_value = 0.2, double max_value = 5.0);
Matrix random_nonnegative(std::mt19937_64& rng, const RandomSupportOptions& options,
                          double min_value = 0.05, double max_value = 2.0);

}  // namespace spectral_range::oracle
