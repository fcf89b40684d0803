#include "banmin/duality.hpp"

#include <algorithm>
#include <cmath>

#include "banmin/errors.hpp"

namespace banmin {

bool SubdiffFaceLinf::contains(Index j) const {
  return std::binary_search(max_indices.begin(), max_indices.end(), j);
}

int SubdiffFaceLinf::sign_at(Index j) const {
  auto it = std::lower_bound(max_indices.begin(), max_indices.end(), j);
  if (it == max_indices.end() || *it != j) return 0;
  return signs[static_cast<std::size_t>(it - max_indices.begin())];
}

SparseSeq dmap_lq(const SparseSeq& u, double q) {
  if (!(q > 1.0)) throw ParameterError("dmap_lq: exponent must exceed 1, got " + std::to_string(q));
  if (u.empty()) return SparseSeq{};
  const double nq = norm_lp(u, q);
  std::vector<SparseSeq::Entry> out;
  out.reserve(u.nnz());
  for (const auto& [j, v] : u.entries()) {
    double mag = std::pow(std::abs(v) / nq, q - 1.0) * nq;  // |v|^{q-1} / nq^{q-2}
    out.emplace_back(j, v > 0 ? mag : -mag);
  }
  return SparseSeq::from_pairs(std::move(out));
}

SubdiffFaceLinf linf_face(const SparseSeq& u, double eps_rel) {
  if (u.empty()) throw DegenerateInputError("linf_face: the zero element has the full unit ball as subdifferential");
  SubdiffFaceLinf face;
  face.norm_value = norm_linf(u);
  const double cut = (1.0 - eps_rel) * face.norm_value;
  for (const auto& [j, v] : u.entries()) {
    if (std::abs(v) >= cut) {
      face.max_indices.push_back(j);
      face.signs.push_back(v > 0 ? 1 : -1);
    }
  }
  return face;
}

SparseSeq truncate_S(const SparseSeq& u, double eps_rel) {
  if (u.empty()) return SparseSeq{};
  const double cut = (1.0 - eps_rel) * norm_linf(u);
  std::vector<SparseSeq::Entry> kept;
  for (const auto& [j, v] : u.entries())
    if (std::abs(v) >= cut) kept.emplace_back(j, v);
  return SparseSeq::from_pairs(std::move(kept));
}

Membership linf_subdiff_membership(const SparseSeq& v, const SparseSeq& u, double scale,
                                   double tol) {
  if (u.empty()) throw DegenerateInputError("linf_subdiff_membership: u must be nonzero");
  if (scale < 0.0) throw ParameterError("linf_subdiff_membership: scale must be nonnegative");
  SubdiffFaceLinf face = linf_face(u);
  Membership result;
  double violation = 0.0;
  double weight_sum = 0.0;
  for (const auto& [j, vj] : v.entries()) {
    int s = face.sign_at(j);
    if (s == 0) {
      violation = std::max(violation, std::abs(vj));  // mass off the face
      continue;
    }
    // v_j must point along sign(u_j); the signed weight contributes to the sum.
    violation = std::max(violation, std::max(0.0, -vj * s));
    weight_sum += std::abs(vj);
  }
  violation = std::max(violation, std::abs(weight_sum - scale));
  result.accepted = violation <= tol;
  result.max_violation = violation;
  return result;
}

Membership l1_subdiff_membership(const SparseSeq& u, const SparseSeq& x, double tol) {
  Membership result;
  double violation = 0.0;
  for (const auto& [j, uj] : u.entries())
    violation = std::max(violation, std::abs(uj) - 1.0);
  for (const auto& [j, xj] : x.entries()) {
    double want = xj > 0 ? 1.0 : -1.0;
    violation = std::max(violation, std::abs(u.at(j) - want));
  }
  result.accepted = violation <= tol;
  result.max_violation = std::max(0.0, violation);
  return result;
}

}  // namespace banmin
