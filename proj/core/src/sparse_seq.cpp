#include "banmin/sparse_seq.hpp"

#include <algorithm>
#include <cmath>

#include "banmin/errors.hpp"

namespace banmin {

SparseSeq SparseSeq::from_pairs(std::vector<Entry> pairs) {
  std::sort(pairs.begin(), pairs.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  SparseSeq out;
  out.entries_.reserve(pairs.size());
  for (const Entry& e : pairs) {
    if (!out.entries_.empty() && out.entries_.back().first == e.first) {
      out.entries_.back().second += e.second;
      if (out.entries_.back().second == 0.0) out.entries_.pop_back();
    } else if (e.second != 0.0) {
      out.entries_.push_back(e);
    }
  }
  return out;
}

SparseSeq SparseSeq::unit(Index j, double value) {
  return from_pairs({{j, value}});
}

double SparseSeq::at(Index j) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), j,
                             [](const Entry& e, Index k) { return e.first < k; });
  if (it != entries_.end() && it->first == j) return it->second;
  return 0.0;
}

std::vector<Index> SparseSeq::support() const {
  std::vector<Index> s;
  s.reserve(entries_.size());
  for (const Entry& e : entries_) s.push_back(e.first);
  return s;
}

double norm_l1(const SparseSeq& x) {
  double s = 0.0;
  for (const auto& [j, v] : x.entries()) s += std::abs(v);
  return s;
}

double norm_lp(const SparseSeq& x, double p) {
  if (!(p > 1.0)) throw ParameterError("norm_lp: exponent must exceed 1, got " + std::to_string(p));
  if (x.empty()) return 0.0;
  // Scale by the sup norm so the powers stay in range for extreme p.
  double m = norm_linf(x);
  double s = 0.0;
  for (const auto& [j, v] : x.entries()) s += std::pow(std::abs(v) / m, p);
  return m * std::pow(s, 1.0 / p);
}

double norm_linf(const SparseSeq& x) {
  double m = 0.0;
  for (const auto& [j, v] : x.entries()) m = std::max(m, std::abs(v));
  return m;
}

double norm_in(const SparseSeq& x, const SpaceTag& space) {
  switch (space.kind) {
    case SpaceTag::Kind::Hilbert: return norm_lp(x, 2.0);
    case SpaceTag::Kind::Lp: return norm_lp(x, space.p);
    case SpaceTag::Kind::L1: return norm_l1(x);
  }
  return 0.0;
}

double inner(const SparseSeq& u, const SparseSeq& x) {
  double s = 0.0;
  auto iu = u.entries().begin();
  auto ix = x.entries().begin();
  while (iu != u.entries().end() && ix != x.entries().end()) {
    if (iu->first < ix->first) {
      ++iu;
    } else if (ix->first < iu->first) {
      ++ix;
    } else {
      s += iu->second * ix->second;
      ++iu;
      ++ix;
    }
  }
  return s;
}

SparseSeq combine(double alpha, const SparseSeq& x, double beta, const SparseSeq& y) {
  std::vector<SparseSeq::Entry> merged;
  merged.reserve(x.nnz() + y.nnz());
  auto ix = x.entries().begin();
  auto iy = y.entries().begin();
  while (ix != x.entries().end() || iy != y.entries().end()) {
    if (iy == y.entries().end() || (ix != x.entries().end() && ix->first < iy->first)) {
      double v = alpha * ix->second;
      if (v != 0.0) merged.emplace_back(ix->first, v);
      ++ix;
    } else if (ix == x.entries().end() || iy->first < ix->first) {
      double v = beta * iy->second;
      if (v != 0.0) merged.emplace_back(iy->first, v);
      ++iy;
    } else {
      double v = alpha * ix->second + beta * iy->second;
      if (v != 0.0) merged.emplace_back(ix->first, v);
      ++ix;
      ++iy;
    }
  }
  SparseSeq out = SparseSeq::from_pairs(std::move(merged));
  return out;
}

}  // namespace banmin
