#pragma once

#include <optional>
#include <vector>

#include "spectral_range/scaling.hpp"
#include "spectral_range/sigma.hpp"

namespace spectral_range {

/// Column assigned to each row, and the product of the assigned entries.
struct Assignment {
  std::vector<int> column_of_row;
  double product = 0.0;
};

/// Permutation maximizing prod_i a_{i, sigma(i)}; ties go to the lexicographically
/// smallest column_of_row. Absent when the support has no perfect matching.
std::optional<Assignment> max_product_assignment(const Matrix& a);

struct DominanceCertificate {
  Vector dominance_scaling;  // Z: PADZ is strictly diagonally dominant
  double margin = 0.0;       // min_i (1 - sum_{j != i} (PADZ)_ij / (PADZ)_ii)
};

/// Outcome of the regularity test for Omega(A) = {E : |e_ij| = a_ij}.
struct RegularityVerdict {
  bool regular = false;
  bool boundary = false;         // test_radius within kDecisionTolerance of 1
  std::vector<int> permutation;  // row i of PA is row permutation[i] of A; empty without an assignment
  Vector unit_diagonal_scaling;  // D: diag(PAD) = 1
  double test_radius = 0.0;      // rho(PAD - I); +infinity without an assignment
  std::optional<DominanceCertificate> certificate;
  std::optional<ComplexMatrix> witness;  // singular member of Omega(A)
};

inline constexpr double kDecisionTolerance = 1e-9;

RegularityVerdict decide(const Matrix& a);

/// Complex numbers with the given moduli summing to zero. Requires every length to be
/// at most the sum of the others (up to 1e-9 of the total).
ComplexVector close_polygon(const Vector& lengths);

/// C with |C| = e and zero row sums, for e with unit diagonal, off-diagonal entries <= 1
/// and off-diagonal row sums >= 1.
ComplexMatrix singular_row_matrix(const Matrix& e);

/// Singular member of Omega(a) from the non-regular branch: `permutation` and `d` as in
/// RegularityVerdict, rho(PAD - I) >= 1 (within kDecisionTolerance).
ComplexMatrix singular_witness(const Matrix& a, const std::vector<int>& permutation, const Vector& d);

/// comp(PA) is a nonsingular M-matrix for P from max_product_assignment.
bool m_matrix_check(const Matrix& a);

}  // namespace spectral_range
