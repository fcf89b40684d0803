#ifndef BANMIN_TESTS_HELPERS_HPP
#define BANMIN_TESTS_HELPERS_HPP

#include <initializer_list>
#include <utility>
#include <vector>

#include "banmin/random.hpp"
#include "banmin/sampling.hpp"
#include "banmin/sparse_seq.hpp"

namespace testutil {

inline banmin::SparseSeq seq(std::initializer_list<std::pair<banmin::Index, double>> entries) {
  std::vector<banmin::SparseSeq::Entry> v(entries.begin(), entries.end());
  return banmin::SparseSeq::from_pairs(std::move(v));
}

inline banmin::SamplingOperator make_op(
    std::initializer_list<std::initializer_list<std::pair<banmin::Index, double>>> rows) {
  std::vector<banmin::SparseSeq> r;
  for (const auto& row : rows) r.push_back(seq(row));
  return banmin::SamplingOperator(std::move(r));
}

inline Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (double x : values) v(k++) = x;
  return v;
}

inline banmin::SparseSeq random_seq(banmin::Rng& rng, banmin::Index max_index = 40,
                                    double density = 0.4) {
  std::vector<banmin::SparseSeq::Entry> e;
  for (banmin::Index j = 0; j <= max_index; ++j)
    if (rng.uniform() < density) e.emplace_back(j, rng.normal());
  return banmin::SparseSeq::from_pairs(std::move(e));
}

inline double max_abs_diff(const banmin::SparseSeq& a, const banmin::SparseSeq& b) {
  return banmin::norm_linf(banmin::combine(1.0, a, -1.0, b));
}

}  // namespace testutil

#endif  // BANMIN_TESTS_HELPERS_HPP
