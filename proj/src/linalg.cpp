#include "feti/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace feti {

SparseSymMatrix::SparseSymMatrix(int dim) : mat_(dim, dim) {}

SparseSymMatrix::SparseSymMatrix(int dim, const std::vector<Triplet>& entries)
    : mat_(dim, dim) {
  mat_.setFromTriplets(entries.begin(), entries.end());
  mat_.makeCompressed();
}

SparseMatrix SparseSymMatrix::submatrix(const std::vector<int>& rows,
                                        const std::vector<int>& cols) const {
  std::vector<int> row_map(dim(), -1);
  for (std::size_t i = 0; i < rows.size(); ++i) row_map[rows[i]] = static_cast<int>(i);

  std::vector<Triplet> trips;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (SparseMatrix::InnerIterator it(mat_, cols[j]); it; ++it) {
      const int r = row_map[it.row()];
      if (r >= 0) trips.emplace_back(r, static_cast<int>(j), it.value());
    }
  }
  SparseMatrix out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  out.setFromTriplets(trips.begin(), trips.end());
  out.makeCompressed();
  return out;
}

SparseSymMatrix SparseSymMatrix::submatrix_sym(const std::vector<int>& idx) const {
  std::vector<int> map(dim(), -1);
  for (std::size_t i = 0; i < idx.size(); ++i) map[idx[i]] = static_cast<int>(i);

  std::vector<Triplet> trips;
  for (std::size_t j = 0; j < idx.size(); ++j) {
    for (SparseMatrix::InnerIterator it(mat_, idx[j]); it; ++it) {
      const int r = map[it.row()];
      if (r >= 0) trips.emplace_back(r, static_cast<int>(j), it.value());
    }
  }
  return SparseSymMatrix(static_cast<int>(idx.size()), trips);
}

Vector SparseSymMatrix::column(int j) const {
  Vector out = Vector::Zero(dim());
  for (SparseMatrix::InnerIterator it(mat_, j); it; ++it) out[it.row()] = it.value();
  return out;
}

double SparseSymMatrix::symmetry_error() const {
  SparseMatrix diff = SparseMatrix(mat_.transpose()) - mat_;
  double err = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it)
      err = std::max(err, std::abs(it.value()));
  return err;
}

SparseCholesky::SparseCholesky(const SparseSymMatrix& a) : dim_(a.dim()) {
  llt_.compute(a.matrix());
  if (llt_.info() != Eigen::Success)
    throw NotPositiveDefinite("sparse Cholesky failed: matrix is not SPD");
}

Vector SparseCholesky::solve(const Vector& b) const { return llt_.solve(b); }

Matrix SparseCholesky::solve(const Matrix& b) const { return llt_.solve(b); }

SparseMatrix SparseCholesky::lower_factor() const {
  return SparseMatrix(llt_.matrixL());
}

Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int>
SparseCholesky::permutation() const {
  return llt_.permutationP();
}

PivotedCholesky pivoted_cholesky(Matrix a, double pivot_tol) {
  const int n = static_cast<int>(a.rows());
  PivotedCholesky out;
  out.dim = n;
  out.permutation.resize(n);
  for (int i = 0; i < n; ++i) out.permutation[i] = i;

  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, a(i, i));
  const double stop_tol = pivot_tol * scale;
  const double neg_tol = -pivot_tol * std::max(scale, 1e-300);

  int rank = 0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int j = k + 1; j < n; ++j)
      if (a(j, j) > a(piv, piv)) piv = j;
    const double d = a(piv, piv);
    if (d <= stop_tol) {
      for (int j = k; j < n; ++j)
        if (a(j, j) < neg_tol)
          throw IndefiniteInput("pivoted Cholesky: negative pivot " +
                                std::to_string(a(j, j)));
      break;
    }
    if (piv != k) {
      a.row(k).swap(a.row(piv));
      a.col(k).swap(a.col(piv));
      std::swap(out.permutation[k], out.permutation[piv]);
    }
    const double l = std::sqrt(d);
    a(k, k) = l;
    const int rem = n - k - 1;
    if (rem > 0) {
      a.col(k).tail(rem) /= l;
      for (int j = k + 1; j < n; ++j)
        a.col(j).tail(n - j) -= a(j, k) * a.col(k).tail(n - j);
    }
    rank = k + 1;
  }

  out.rank = rank;
  out.lower = Matrix::Zero(n, rank);
  for (int j = 0; j < rank; ++j)
    for (int i = j; i < n; ++i) out.lower(i, j) = a(i, j);
  return out;
}

Matrix PivotedCholesky::compress(const Matrix& w) const {
  Matrix picked(w.rows(), rank);
  for (int k = 0; k < rank; ++k) picked.col(k) = w.col(permutation[k]);
  // picked * Ltilde^{-T}, computed as (Ltilde^{-1} picked^T)^T
  Matrix lt = lower.topRows(rank);
  Matrix solved = lt.triangularView<Eigen::Lower>().solve(picked.transpose());
  return solved.transpose();
}

Matrix PivotedCholesky::reconstruct_permuted() const {
  return lower * lower.transpose();
}

namespace {

// Greedy volume-maximizing choice of basis.cols() rows of the nullspace
// basis; the selected rows form a well-conditioned square block.
std::vector<int> select_fixing_dofs(const Matrix& basis) {
  const int n = static_cast<int>(basis.rows());
  const int w = static_cast<int>(basis.cols());
  std::vector<int> fixed;
  Matrix ortho(w, 0);  // orthonormal basis of the span of selected rows
  for (int pick = 0; pick < w; ++pick) {
    int best = -1;
    double best_score = -1.0;
    for (int d = 0; d < n; ++d) {
      Eigen::VectorXd r = basis.row(d).transpose();
      if (ortho.cols() > 0) r -= ortho * (ortho.transpose() * r);
      const double score = r.norm();
      if (score > best_score) {
        best_score = score;
        best = d;
      }
    }
    if (best < 0 || best_score <= 0.0)
      throw IndefiniteInput("nullspace basis is rank deficient");
    fixed.push_back(best);
    Eigen::VectorXd r = basis.row(best).transpose();
    if (ortho.cols() > 0) r -= ortho * (ortho.transpose() * r);
    ortho.conservativeResize(w, ortho.cols() + 1);
    ortho.col(ortho.cols() - 1) = r / r.norm();
  }
  std::sort(fixed.begin(), fixed.end());
  return fixed;
}

}  // namespace

SemidefiniteCholesky::SemidefiniteCholesky(const SparseSymMatrix& k,
                                           const Matrix& nullspace_basis)
    : null_basis_(nullspace_basis), dim_(k.dim()) {
  fixed_ = select_fixing_dofs(null_basis_);
  std::vector<bool> is_fixed(dim_, false);
  for (int d : fixed_) is_fixed[d] = true;
  keep_.reserve(dim_ - static_cast<int>(fixed_.size()));
  for (int d = 0; d < dim_; ++d)
    if (!is_fixed[d]) keep_.push_back(d);
  reduced_ = std::make_unique<SparseCholesky>(k.submatrix_sym(keep_));
}

void SemidefiniteCholesky::check_compatible(const Vector& rhs) const {
  const double rhs_norm = rhs.norm();
  for (int c = 0; c < null_basis_.cols(); ++c) {
    const double proj = std::abs(null_basis_.col(c).dot(rhs));
    if (proj > 1e-8 * rhs_norm * null_basis_.col(c).norm())
      throw IncompatibleRhs("rhs has a nullspace component: |R^T rhs| = " +
                            std::to_string(proj));
  }
}

Vector SemidefiniteCholesky::pseudo_solve(const Vector& rhs) const {
  check_compatible(rhs);
  return solve_unchecked(rhs);
}

Vector SemidefiniteCholesky::solve_unchecked(const Vector& rhs) const {
  Vector b(keep_.size());
  for (std::size_t i = 0; i < keep_.size(); ++i) b[i] = rhs[keep_[i]];
  Vector x = reduced_->solve(b);
  Vector out = Vector::Zero(dim_);
  for (std::size_t i = 0; i < keep_.size(); ++i) out[keep_[i]] = x[i];
  return out;
}

Matrix SemidefiniteCholesky::solve_unchecked(const Matrix& rhs) const {
  Matrix b(keep_.size(), rhs.cols());
  for (std::size_t i = 0; i < keep_.size(); ++i) b.row(i) = rhs.row(keep_[i]);
  Matrix x = reduced_->solve(b);
  Matrix out = Matrix::Zero(dim_, rhs.cols());
  for (std::size_t i = 0; i < keep_.size(); ++i) out.row(keep_[i]) = x.row(i);
  return out;
}

}  // namespace feti
