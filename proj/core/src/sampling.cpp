#include "banmin/sampling.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "banmin/errors.hpp"

namespace banmin {

SamplingOperator::SamplingOperator(std::vector<SparseSeq> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw ParameterError("SamplingOperator: need at least one functional");
  for (const SparseSeq& r : rows_)
    for (const auto& [j, v] : r.entries()) union_support_.push_back(j);
  std::sort(union_support_.begin(), union_support_.end());
  union_support_.erase(std::unique(union_support_.begin(), union_support_.end()),
                       union_support_.end());

  dense_.setZero(static_cast<Eigen::Index>(rows_.size()),
                 static_cast<Eigen::Index>(union_support_.size()));
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    for (const auto& [idx, v] : rows_[j].entries()) {
      auto it = std::lower_bound(union_support_.begin(), union_support_.end(), idx);
      dense_(static_cast<Eigen::Index>(j),
             static_cast<Eigen::Index>(it - union_support_.begin())) = v;
    }
  }
}

Coefs SamplingOperator::apply_L(const SparseSeq& x) const {
  Coefs out(static_cast<Eigen::Index>(m()));
  for (std::size_t j = 0; j < m(); ++j) out(static_cast<Eigen::Index>(j)) = inner(rows_[j], x);
  return out;
}

SparseSeq SamplingOperator::apply_Lstar(const Coefs& c) const {
  if (static_cast<std::size_t>(c.size()) != m())
    throw ParameterError("apply_Lstar: coefficient length " + std::to_string(c.size()) +
                         " does not match operator size " + std::to_string(m()));
  std::vector<SparseSeq::Entry> acc;
  for (std::size_t j = 0; j < m(); ++j) {
    double cj = c(static_cast<Eigen::Index>(j));
    if (cj == 0.0) continue;
    for (const auto& [idx, v] : rows_[j].entries()) acc.emplace_back(idx, cj * v);
  }
  return SparseSeq::from_pairs(std::move(acc));
}

Eigen::MatrixXd SamplingOperator::gram_matrix() const {
  const auto mm = static_cast<Eigen::Index>(m());
  Eigen::MatrixXd g(mm, mm);
  for (Eigen::Index j = 0; j < mm; ++j)
    for (Eigen::Index k = j; k < mm; ++k)
      g(j, k) = g(k, j) = inner(rows_[static_cast<std::size_t>(j)], rows_[static_cast<std::size_t>(k)]);
  return g;
}

double SamplingOperator::smallest_singular_value() const {
  // more rows than support coordinates: the family cannot be independent
  if (dense_.rows() > dense_.cols()) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(dense_);
  return svd.singularValues().minCoeff();
}

double SamplingOperator::operator_norm() const {
  // Power iteration on A^T A with a fixed deterministic start.
  const Eigen::MatrixXd& a = dense_;
  if (a.size() == 0) return 0.0;
  Eigen::VectorXd v = Eigen::VectorXd::Ones(a.cols());
  v.normalize();
  double lam = 0.0;
  for (int it = 0; it < 200; ++it) {
    Eigen::VectorXd w = a.transpose() * (a * v);
    double nw = w.norm();
    if (nw == 0.0) return 0.0;
    w /= nw;
    double lam_new = (a * w).squaredNorm();
    if (std::abs(lam_new - lam) <= 1e-14 * std::max(1.0, lam_new)) {
      lam = lam_new;
      break;
    }
    lam = lam_new;
    v = w;
  }
  return std::sqrt(lam);
}

SparseSeq SamplingOperator::lift(const Eigen::VectorXd& dense_coords) const {
  if (static_cast<std::size_t>(dense_coords.size()) != union_support_.size())
    throw ParameterError("lift: coordinate length does not match union support size");
  std::vector<SparseSeq::Entry> pairs;
  for (std::size_t k = 0; k < union_support_.size(); ++k) {
    double v = dense_coords(static_cast<Eigen::Index>(k));
    if (v != 0.0) pairs.emplace_back(union_support_[k], v);
  }
  return SparseSeq::from_pairs(std::move(pairs));
}

Eigen::VectorXd SamplingOperator::restrict(const SparseSeq& x) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(union_support_.size()));
  for (const auto& [idx, v] : x.entries()) {
    auto it = std::lower_bound(union_support_.begin(), union_support_.end(), idx);
    if (it != union_support_.end() && *it == idx)
      out(static_cast<Eigen::Index>(it - union_support_.begin())) = v;
  }
  return out;
}

}  // namespace banmin
