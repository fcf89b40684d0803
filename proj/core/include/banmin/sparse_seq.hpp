#ifndef BANMIN_SPARSE_SEQ_HPP
#define BANMIN_SPARSE_SEQ_HPP

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "banmin/spaces.hpp"

namespace banmin {

using Index = std::size_t;

/// A finitely supported real sequence in canonical form: entries sorted by
/// strictly increasing index, no stored zeros.  Immutable after construction;
/// all arithmetic goes through free functions returning new values.
class SparseSeq {
public:
  using Entry = std::pair<Index, double>;

  SparseSeq() = default;

  /// Canonicalizes: sorts by index, sums duplicates, drops exact zeros.
  static SparseSeq from_pairs(std::vector<Entry> pairs);

  static SparseSeq unit(Index j, double value = 1.0);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Value at index j (0 if not stored).  Binary search.
  double at(Index j) const;

  std::vector<Index> support() const;

  /// Largest stored index + 1, or 0 when empty.
  Index extent() const { return entries_.empty() ? 0 : entries_.back().first + 1; }

  bool operator==(const SparseSeq& other) const { return entries_ == other.entries_; }
  bool operator!=(const SparseSeq& other) const { return !(*this == other); }

private:
  std::vector<Entry> entries_;
};

/// ell_1 norm: sum of absolute values.
double norm_l1(const SparseSeq& x);

/// ell_p norm for p > 1.  Throws ParameterError for p <= 1.
double norm_lp(const SparseSeq& x, double p);

/// sup norm (the c0 norm).
double norm_linf(const SparseSeq& x);

/// Norm dispatch on a space tag: Hilbert -> ell_2, Lp -> ell_p, L1 -> ell_1.
double norm_in(const SparseSeq& x, const SpaceTag& space);

/// Dual pairing <u, x> = sum_j u_j x_j over the common support.
double inner(const SparseSeq& u, const SparseSeq& x);

/// alpha*x + beta*y in canonical form; exact cancellations drop out.
SparseSeq combine(double alpha, const SparseSeq& x, double beta, const SparseSeq& y);

inline SparseSeq scale(double alpha, const SparseSeq& x) { return combine(alpha, x, 0.0, SparseSeq{}); }

}  // namespace banmin

#endif  // BANMIN_SPARSE_SEQ_HPP
