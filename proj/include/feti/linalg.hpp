#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <memory>
#include <vector>

#include "feti/errors.hpp"

namespace feti {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

/// Symmetric sparse matrix with both triangles stored. Duplicate triplets are
/// summed; a symmetric triplet stream therefore yields bit-exact symmetry.
class SparseSymMatrix {
 public:
  SparseSymMatrix() = default;
  explicit SparseSymMatrix(int dim);
  SparseSymMatrix(int dim, const std::vector<Triplet>& entries);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const SparseMatrix& matrix() const { return mat_; }
  Vector diagonal() const { return mat_.diagonal(); }
  Vector apply(const Vector& x) const { return mat_ * x; }
  Matrix dense() const { return Matrix(mat_); }

  /// Extracts the rows×cols block selected by two index sets.
  SparseMatrix submatrix(const std::vector<int>& rows,
                         const std::vector<int>& cols) const;
  /// Principal submatrix on an index set, kept symmetric.
  SparseSymMatrix submatrix_sym(const std::vector<int>& idx) const;
  /// One column as a dense vector.
  Vector column(int j) const;

  /// max |A - A^T| over all entries; 0 for bit-exact symmetric storage.
  double symmetry_error() const;

 private:
  SparseMatrix mat_;
};

enum class FactorKind { definite, semidefinite };

/// Sparse Cholesky of an SPD matrix. Throws NotPositiveDefinite when a pivot
/// fails, which signals a singular or indefinite block upstream.
class SparseCholesky {
 public:
  explicit SparseCholesky(const SparseSymMatrix& a);

  int dim() const { return dim_; }
  int rank() const { return dim_; }
  FactorKind kind() const { return FactorKind::definite; }

  Vector solve(const Vector& b) const;
  Matrix solve(const Matrix& b) const;

  SparseMatrix lower_factor() const;
  Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> permutation()
      const;

 private:
  Eigen::SimplicialLLT<SparseMatrix> llt_;
  int dim_ = 0;
};

/// Result of the pivoted rank-revealing Cholesky N A N^T = L L^T with
/// L = [[Ltilde, 0], [X, 0]]. `permutation[k]` is the original index of the
/// k-th pivot; `lower` holds the n×rank block [Ltilde; X] in pivot order.
struct PivotedCholesky {
  Eigen::VectorXi permutation;
  Matrix lower;
  int rank = 0;
  int dim = 0;

  /// Applies the basis compression W N^T [Ltilde^{-T}; 0] column-wise.
  Matrix compress(const Matrix& w) const;
  /// [Ltilde; X] [Ltilde; X]^T, an approximation of N A N^T.
  Matrix reconstruct_permuted() const;
};

/// Pivoted Cholesky of a dense symmetric PSD matrix. The pivot at each step is
/// the largest remaining diagonal; the factorization stops (revealing the
/// rank) once that pivot drops to pivot_tol times the largest initial
/// diagonal. A pivot below -pivot_tol*scale raises IndefiniteInput.
PivotedCholesky pivoted_cholesky(Matrix a, double pivot_tol = 1e-12);

/// Generalized inverse of a symmetric PSD matrix with a known nullspace
/// basis. Three DOFs are fixed (chosen so the corresponding rows of the
/// nullspace basis are maximally independent), the reduced SPD block is
/// factorized once, and solutions carry zeros at the fixed DOFs. For a
/// right-hand side orthogonal to the nullspace this yields an exact
/// particular solution.
class SemidefiniteCholesky {
 public:
  SemidefiniteCholesky(const SparseSymMatrix& k, const Matrix& nullspace_basis);

  int dim() const { return dim_; }
  int rank() const { return dim_ - static_cast<int>(null_basis_.cols()); }
  FactorKind kind() const { return FactorKind::semidefinite; }
  const std::vector<int>& fixed_dofs() const { return fixed_; }
  const Matrix& nullspace() const { return null_basis_; }

  /// Particular solution of K x = rhs. Checks |R_k^T rhs| <= 1e-8 |rhs| |R_k|
  /// per nullspace column and raises IncompatibleRhs on failure.
  Vector pseudo_solve(const Vector& rhs) const;

  /// Same linear map without the compatibility check. Being linear, it can be
  /// applied to the two halves of a compatible difference separately.
  Vector solve_unchecked(const Vector& rhs) const;
  Matrix solve_unchecked(const Matrix& rhs) const;

  void check_compatible(const Vector& rhs) const;

 private:
  std::vector<int> fixed_;
  std::vector<int> keep_;
  Matrix null_basis_;
  std::unique_ptr<SparseCholesky> reduced_;
  int dim_ = 0;
};

}  // namespace feti
