#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "spectral_range/eta.hpp"

namespace spectral_range {

using Complex = std::complex<double>;

enum class Boundary { Open, Closed };

struct Disk {
  double radius = 0.0;
  Boundary boundary = Boundary::Open;
};

/// A rotation-invariant subset of the complex plane described by moduli:
/// an optional punctured disk {0 < |s| < R} or {0 < |s| <= R}, circles |s| = r, and 0.
struct ModulusSet {
  std::optional<Disk> disk;
  std::vector<double> circles;
  bool zero_included = false;

  /// Absorbs circles covered by the disk, sorts the rest and merges equal radii.
  void canonicalize();
  bool contains(Complex lambda) const;
  /// Same structure with radii equal within `relative_tolerance`.
  bool approx_equal(const ModulusSet& other, double relative_tolerance = 1e-12) const;
};

/// Radii closer than this (relative) are the same circle.
inline constexpr double kRadiusTolerance = 1e-10;

struct EigenWitness {
  ComplexMatrix matrix;
  Complex eigenvalue;
  std::optional<ComplexVector> eigenvector;

  /// Empty when aux_complex(matrix) == b (1e-9 relative) and the residual bound holds:
  /// ||Cv - lambda v||_inf <= 1e-8 ||v||_inf, or |det(C - lambda I)| <= 1e-8 * scale
  /// with scale the product of the row 1-norms of C - lambda I.
  std::string check(const RowUniformMatrix& b) const;
};

inline constexpr double kWitnessResidualTolerance = 1e-8;

enum class DiagonalProductCount { Zero, One, Many };
const char* to_string(DiagonalProductCount count);

/// Number of nonzero generalized diagonal products, capped at "many".
DiagonalProductCount diagonal_product_count(const RowUniformMatrix& b);

struct ZeroMembership {
  bool member = false;
  std::optional<EigenWitness> witness;
};

ZeroMembership zero_in_sigma(const RowUniformMatrix& b);

enum class Cyclicity { Unicyclic, Multicyclic };
const char* to_string(Cyclicity cyclicity);

/// Unicyclic iff the support graph is a single Hamiltonian cycle. Requires irreducible b.
Cyclicity classify_cyclic(const RowUniformMatrix& b);

/// sigma(b)\{0} for irreducible b.
ModulusSet sigma_irreducible(const RowUniformMatrix& b);

/// Eigenvalues reachable when the rows in `k` lose some of their modulus mass:
/// the open punctured disk of radius mu(b), whatever k is (k must be nonempty).
ModulusSet sigma_tilde(const RowUniformMatrix& b, const std::vector<int>& k);

/// sigma(b): union over final classes and transient classes, plus the zero flag.
ModulusSet sigma_describe(const RowUniformMatrix& b);

/// C with aux_complex(C) = b and C v = lambda v. Throws InfeasibleError if lambda is not
/// in sigma(b). Reducible b is handled by realizing lambda on one class and embedding.
EigenWitness realize_eigenvalue(const RowUniformMatrix& b, Complex lambda);

/// Regularity of {I - A : aux_complex(A) = b} for irreducible multicyclic b with zero diagonal.
struct GammaRegularity {
  bool regular = false;
  std::optional<EigenWitness> witness;  // eigenvalue 1, so det(I - A) = 0
};

GammaRegularity gamma_regularity(const RowUniformMatrix& b);

}  // namespace spectral_range
