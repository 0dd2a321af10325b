#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "spectral_range/graph.hpp"

namespace spectral_range {

/// Dense nonnegative matrix. The type is plain Eigen; nonnegativity is checked at the
/// public entry points that require it.
using Matrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using SupportMask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Throws std::invalid_argument unless `a` is square, nonempty, finite and entrywise >= 0.
void require_nonnegative(const Matrix& a, const char* what = "matrix");

/// Nonnegative matrix whose nonzero entries are constant along each row.
///
/// Stored as support + one value per row, so the row-uniform property holds by
/// construction. Rows with empty support carry value 0 and count as "no value".
template <typename Scalar>
class BasicRowUniformMatrix {
 public:
  using ValueVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  BasicRowUniformMatrix() = default;

  /// `row_value[i]` must be positive whenever row i of `support` is nonempty; values of
  /// empty rows are ignored (stored as 0).
  BasicRowUniformMatrix(SupportMask support, ValueVector row_value)
      : support_(std::move(support)), row_value_(std::move(row_value)) {
    if (support_.rows() != support_.cols() || support_.rows() == 0)
      throw std::invalid_argument("row-uniform matrix: support must be square and nonempty");
    if (row_value_.size() != support_.rows())
      throw std::invalid_argument("row-uniform matrix: row_value length differs from dimension");
    for (Eigen::Index i = 0; i < size(); ++i) {
      if (!support_.row(i).any()) {
        row_value_(i) = Scalar(0);
      } else if (!(row_value_(i) > Scalar(0)) || !std::isfinite(static_cast<double>(row_value_(i)))) {
        throw std::invalid_argument("row-uniform matrix: row " + std::to_string(i + 1) +
                                    " has support but no positive value");
      }
    }
  }

  /// Validating constructor from a dense matrix; rejects rows whose nonzero entries
  /// differ by more than `relative_tolerance`.
  static BasicRowUniformMatrix from_dense(const DenseMatrix& b, double relative_tolerance = 1e-12) {
    if (b.rows() != b.cols() || b.rows() == 0)
      throw std::invalid_argument("row-uniform matrix: dense input must be square and nonempty");
    if ((b.array() < Scalar(0)).any())
      throw std::invalid_argument("row-uniform matrix: negative entry");
    SupportMask support = b.array() != Scalar(0);
    ValueVector values = ValueVector::Zero(b.rows());
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
      Scalar lo = 0, hi = 0;
      bool first = true;
      for (Eigen::Index j = 0; j < b.cols(); ++j) {
        if (!support(i, j)) continue;
        lo = first ? b(i, j) : std::min(lo, b(i, j));
        hi = first ? b(i, j) : std::max(hi, b(i, j));
        first = false;
      }
      if (!first && (hi - lo) > relative_tolerance * hi)
        throw std::invalid_argument("row-uniform matrix: row " + std::to_string(i + 1) +
                                    " has unequal nonzero entries");
      values(i) = hi;
    }
    return BasicRowUniformMatrix(std::move(support), std::move(values));
  }

  Eigen::Index size() const { return support_.rows(); }
  const SupportMask& support() const { return support_; }
  const ValueVector& row_values() const { return row_value_; }
  Scalar row_value(Eigen::Index i) const { return row_value_(i); }
  bool has_row_value(Eigen::Index i) const { return support_.row(i).any(); }
  int row_support_count(Eigen::Index i) const { return static_cast<int>(support_.row(i).count()); }

  DenseMatrix dense() const {
    DenseMatrix b = DenseMatrix::Zero(size(), size());
    for (Eigen::Index i = 0; i < size(); ++i)
      for (Eigen::Index j = 0; j < size(); ++j)
        if (support_(i, j)) b(i, j) = row_value_(i);
    return b;
  }

  /// Each row's value split evenly over its support.
  DenseMatrix uniform_split() const {
    DenseMatrix u = DenseMatrix::Zero(size(), size());
    for (Eigen::Index i = 0; i < size(); ++i) {
      const int count = row_support_count(i);
      for (Eigen::Index j = 0; j < size(); ++j)
        if (support_(i, j)) u(i, j) = row_value_(i) / Scalar(count);
    }
    return u;
  }

  /// Same support; row values equal within `relative_tolerance`.
  bool approx_equal(const BasicRowUniformMatrix& other, double relative_tolerance = 1e-9) const {
    if (size() != other.size() || (support_ != other.support_).any()) return false;
    for (Eigen::Index i = 0; i < size(); ++i) {
      const Scalar scale = std::max(std::abs(row_value_(i)), std::abs(other.row_value_(i)));
      if (std::abs(row_value_(i) - other.row_value_(i)) > relative_tolerance * scale) return false;
    }
    return true;
  }

 private:
  SupportMask support_;
  ValueVector row_value_;
};

using RowUniformMatrix = BasicRowUniformMatrix<double>;

/// Auxiliary matrix: same support as `a`, every nonzero entry of row i replaced by the
/// i-th row sum of moduli. Works for real and complex input.
template <typename Derived>
RowUniformMatrix aux_of_moduli(const Eigen::MatrixBase<Derived>& a) {
  const Matrix moduli = a.cwiseAbs().template cast<double>();
  SupportMask support = moduli.array() != 0.0;
  return RowUniformMatrix(std::move(support), moduli.rowwise().sum());
}

RowUniformMatrix aux(const Matrix& a);
RowUniformMatrix aux_complex(const ComplexMatrix& a);

/// Entrywise reciprocal on the support, zero elsewhere.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> hadamard_inverse(
    const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  return a.unaryExpr([](Scalar v) { return v != Scalar(0) ? Scalar(1) / v : Scalar(0); });
}

Digraph support_graph(const SupportMask& support);
Digraph support_graph(const Matrix& a);
inline Digraph support_graph(const RowUniformMatrix& b) { return support_graph(b.support()); }

/// Principal submatrix on `nodes` (in the given order).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> principal_submatrix(
    const Eigen::MatrixBase<Derived>& a, const std::vector<int>& nodes) {
  return a(nodes, nodes);
}

RowUniformMatrix principal_submatrix(const RowUniformMatrix& b, const std::vector<int>& nodes);

enum class ClassKind { Trivial, Nontrivial };
enum class ClassAccess { Final, Transient };

/// Frobenius normal form: classes in block lower-triangular order.
struct FrobeniusForm {
  std::vector<int> permutation;  // position -> original node
  std::vector<std::vector<int>> classes;
  std::vector<ClassKind> class_kind;
  std::vector<ClassAccess> class_access;
  std::vector<int> class_of;  // node -> class index

  std::size_t class_count() const { return classes.size(); }
  bool is_final(std::size_t c) const { return class_access[c] == ClassAccess::Final; }
  bool is_trivial(std::size_t c) const { return class_kind[c] == ClassKind::Trivial; }
  bool irreducible() const { return classes.size() == 1 && !is_trivial(0); }
};

FrobeniusForm frobenius_form(const SupportMask& support);
FrobeniusForm frobenius_form(const Matrix& a);
inline FrobeniusForm frobenius_form(const RowUniformMatrix& b) { return frobenius_form(b.support()); }

bool is_irreducible(const SupportMask& support);
inline bool is_irreducible(const Matrix& a) { return is_irreducible(SupportMask(a.array() != 0.0)); }
inline bool is_irreducible(const RowUniformMatrix& b) { return is_irreducible(b.support()); }

/// Simultaneous row/column permutation: result(k, l) = a(perm[k], perm[l]).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> permute_symmetric(
    const Eigen::MatrixBase<Derived>& a, const std::vector<int>& perm) {
  return a(perm, perm);
}

}  // namespace spectral_range
