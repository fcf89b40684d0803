#ifndef BANMIN_SAMPLING_HPP
#define BANMIN_SAMPLING_HPP

#include <Eigen/Core>
#include <vector>

#include "banmin/sparse_seq.hpp"

namespace banmin {

using Coefs = Eigen::VectorXd;

/// The finite family of functionals nu_j, each a finitely supported
/// sequence.  Provides the map L(x) = [<nu_j, x>], its adjoint
/// L*(c) = sum_j c_j nu_j, and the Gram matrix of the rows.
/// Immutable after construction.
class SamplingOperator {
public:
  explicit SamplingOperator(std::vector<SparseSeq> rows);

  std::size_t m() const { return rows_.size(); }
  const std::vector<SparseSeq>& rows() const { return rows_; }
  const SparseSeq& row(std::size_t j) const { return rows_[j]; }

  /// Sorted union of the row supports.
  const std::vector<Index>& union_support() const { return union_support_; }

  /// Dense m x n restriction to the union support (column k <-> union_support()[k]).
  const Eigen::MatrixXd& dense() const { return dense_; }

  Coefs apply_L(const SparseSeq& x) const;
  SparseSeq apply_Lstar(const Coefs& c) const;

  /// G[j][k] = <row_j, row_k>; symmetric positive semidefinite.
  Eigen::MatrixXd gram_matrix() const;

  /// Smallest singular value of the dense restriction.  Diagnostic for
  /// numerical linear independence; never blocks construction.
  double smallest_singular_value() const;
  bool numerically_independent(double tol = 1e-10) const { return smallest_singular_value() > tol; }

  /// Largest singular value of the dense restriction (the operator norm of L
  /// on the union support), estimated by power iteration.
  double operator_norm() const;

  /// Dense coordinates over union_support() -> canonical sparse sequence.
  SparseSeq lift(const Eigen::VectorXd& dense_coords) const;

  /// Canonical sparse sequence -> dense coordinates over union_support().
  /// Entries outside the union support are ignored.
  Eigen::VectorXd restrict(const SparseSeq& x) const;

private:
  std::vector<SparseSeq> rows_;
  std::vector<Index> union_support_;
  Eigen::MatrixXd dense_;
};

}  // namespace banmin

#endif  // BANMIN_SAMPLING_HPP
