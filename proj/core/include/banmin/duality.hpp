#ifndef BANMIN_DUALITY_HPP
#define BANMIN_DUALITY_HPP

#include <vector>

#include "banmin/sparse_seq.hpp"

namespace banmin {

/// Relative tolerance deciding whether a coordinate attains the sup norm.
inline constexpr double kMaxIndexRelTol = 1e-9;

/// Structure of the subdifferential of the sup norm at a nonzero u in c0:
/// the convex hull of sign(u_j) e_j over the max index set N(u).
struct SubdiffFaceLinf {
  double norm_value = 0.0;
  std::vector<Index> max_indices;  // sorted
  std::vector<int> signs;          // parallel to max_indices, each +1 or -1

  bool contains(Index j) const;
  int sign_at(Index j) const;  // 0 if j not in the face
};

/// Boolean verdict plus the worst constraint violation, for diagnostics.
struct Membership {
  bool accepted = false;
  double max_violation = 0.0;
  explicit operator bool() const { return accepted; }
};

/// The ell_q -> ell_p duality map u -> u#, componentwise
/// sign(u_j) |u_j|^{q-1} / ||u||_q^{q-2}, with dmap(0) := 0.
/// Maps the coefficient functional to the interpolant in ell_p.
SparseSeq dmap_lq(const SparseSeq& u, double q);

/// Max index set, signs and norm value of a nonzero u.  A coordinate counts
/// as maximal when |u_j| >= (1 - eps_rel) * ||u||_inf.
/// Throws DegenerateInputError for u = 0 (the subdifferential there is the
/// whole unit ball and callers must handle it separately).
SubdiffFaceLinf linf_face(const SparseSeq& u, double eps_rel = kMaxIndexRelTol);

/// Truncation keeping only the coordinates attaining the sup norm; S(0) = 0.
SparseSeq truncate_S(const SparseSeq& u, double eps_rel = kMaxIndexRelTol);

/// Is v in scale * co({sign(u_j) e_j : j in N(u)})?  Requires u != 0.
Membership linf_subdiff_membership(const SparseSeq& v, const SparseSeq& u, double scale,
                                   double tol);

/// Is u a subgradient of the ell_1 norm at x?  Componentwise: |u_j| <= 1+tol
/// everywhere and u_j = sign(x_j) within tol on the support of x.
Membership l1_subdiff_membership(const SparseSeq& u, const SparseSeq& x, double tol);

}  // namespace banmin

#endif  // BANMIN_DUALITY_HPP
