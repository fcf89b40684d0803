#include <doctest.h>

#include <cmath>

#include "banmin/duality.hpp"
#include "banmin/errors.hpp"
#include "helpers.hpp"

using namespace banmin;
using testutil::random_seq;
using testutil::seq;

TEST_CASE("duality map examples") {
  SparseSeq u = seq({{0, 3.0}, {1, 4.0}});
  CHECK(testutil::max_abs_diff(dmap_lq(u, 2.0), u) <= 1e-14);  // q = 2 is the identity

  CHECK(dmap_lq(SparseSeq{}, 4.0 / 3.0).empty());

  double c = std::pow(2.0, -1.5);
  SparseSeq sym = seq({{0, c}, {1, c}});
  SparseSeq mapped = dmap_lq(sym, 4.0 / 3.0);
  CHECK(mapped.at(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mapped.at(1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("max index face examples") {
  SubdiffFaceLinf f = linf_face(seq({{0, 3.0}, {1, -3.0}, {2, 1.0}}));
  CHECK(f.norm_value == 3.0);
  CHECK(f.max_indices == std::vector<Index>{0, 1});
  CHECK(f.sign_at(0) == 1);
  CHECK(f.sign_at(1) == -1);
  CHECK(f.sign_at(2) == 0);

  SubdiffFaceLinf g = linf_face(seq({{5, -2.0}}));
  CHECK(g.norm_value == 2.0);
  CHECK(g.max_indices == std::vector<Index>{5});
  CHECK(g.sign_at(5) == -1);

  SubdiffFaceLinf h = linf_face(seq({{0, 1.0}, {1, 1.0}, {2, 1.0}}));
  CHECK(h.max_indices.size() == 3);
  for (Index j : h.max_indices) CHECK(h.sign_at(j) == 1);

  CHECK_THROWS_AS(linf_face(SparseSeq{}), DegenerateInputError);
}

TEST_CASE("truncation examples") {
  CHECK(truncate_S(seq({{0, 2.0}, {1, -2.0}, {2, 1.0}})) == seq({{0, 2.0}, {1, -2.0}}));
  CHECK(truncate_S(SparseSeq{}).empty());
  CHECK(truncate_S(seq({{0, 1.0}})) == seq({{0, 1.0}}));
}

TEST_CASE("truncation preserves the sup norm and the face") {
  Rng rng(31);
  for (int t = 0; t < 200; ++t) {
    SparseSeq u = random_seq(rng);
    if (u.empty()) continue;
    SparseSeq su = truncate_S(u);
    CHECK(norm_linf(su) == norm_linf(u));
    SubdiffFaceLinf fu = linf_face(u);
    SubdiffFaceLinf fsu = linf_face(su);
    CHECK(fu.max_indices == fsu.max_indices);
    CHECK(fu.signs == fsu.signs);
  }
}

TEST_CASE("sup-norm subdifferential membership examples") {
  SparseSeq u = seq({{0, 3.0}, {1, -3.0}});
  CHECK(static_cast<bool>(linf_subdiff_membership(seq({{0, 3.0}}), u, 3.0, 1e-12)));
  CHECK(static_cast<bool>(
      linf_subdiff_membership(seq({{0, 1.5}, {1, -1.5}}), u, 3.0, 1e-12)));
  CHECK_FALSE(static_cast<bool>(linf_subdiff_membership(seq({{2, 1.0}}), u, 3.0, 1e-12)));
  CHECK_THROWS_AS(linf_subdiff_membership(seq({{0, 1.0}}), SparseSeq{}, 1.0, 1e-12),
                  DegenerateInputError);
}

TEST_CASE("l1 subdifferential membership examples") {
  CHECK(static_cast<bool>(
      l1_subdiff_membership(seq({{0, 1.0}, {1, -0.3}}), seq({{0, 5.0}}), 1e-12)));
  CHECK_FALSE(static_cast<bool>(l1_subdiff_membership(seq({{0, 1.2}}), SparseSeq{}, 1e-12)));
  CHECK_FALSE(static_cast<bool>(l1_subdiff_membership(seq({{0, -1.0}}), seq({{0, 5.0}}), 1e-12)));
}

TEST_CASE("duality map preserves norms and the pairing") {
  Rng rng(32);
  for (int t = 0; t < 200; ++t) {
    SparseSeq u = random_seq(rng);
    if (u.empty()) continue;
    double q = 1.0 + 3.0 * rng.uniform() + 1e-3;
    double p = q / (q - 1.0);
    SparseSeq mapped = dmap_lq(u, q);
    double nq = norm_lp(u, q);
    CHECK(norm_lp(mapped, p) == doctest::Approx(nq).epsilon(1e-10));
    CHECK(inner(u, mapped) == doctest::Approx(nq * nq).epsilon(1e-10));
  }
}

TEST_CASE("subgradient inequality for accepted face elements") {
  Rng rng(33);
  for (int t = 0; t < 200; ++t) {
    SparseSeq u = random_seq(rng);
    if (u.empty()) continue;
    SubdiffFaceLinf face = linf_face(u);
    // random convex combination of the signed vertices, scaled by the norm
    std::vector<SparseSeq::Entry> entries;
    double total = 0.0;
    std::vector<double> weights;
    for (std::size_t k = 0; k < face.max_indices.size(); ++k) {
      weights.push_back(rng.uniform() + 1e-3);
      total += weights.back();
    }
    for (std::size_t k = 0; k < face.max_indices.size(); ++k)
      entries.emplace_back(face.max_indices[k],
                           face.norm_value * face.signs[k] * weights[k] / total);
    SparseSeq v = SparseSeq::from_pairs(std::move(entries));
    REQUIRE(static_cast<bool>(linf_subdiff_membership(v, u, face.norm_value, 1e-9)));

    SparseSeq g = random_seq(rng);
    double lhs = norm_linf(g) - norm_linf(u);
    double rhs = inner(g, scale(1.0 / face.norm_value, v)) -
                 inner(u, scale(1.0 / face.norm_value, v));
    CHECK(lhs >= rhs - 1e-10);
  }
}

TEST_CASE("pre-dual duality lemma cross-check") {
  Rng rng(34);
  for (int t = 0; t < 200; ++t) {
    SparseSeq x = random_seq(rng);
    if (x.empty()) continue;
    // build u with u / |u|_inf a subgradient of the l1 norm at x
    double peak = 1.0 + rng.uniform();
    std::vector<SparseSeq::Entry> entries;
    for (const auto& [j, v] : x.entries()) entries.emplace_back(j, peak * (v > 0 ? 1.0 : -1.0));
    for (Index j = 41; j < 44; ++j)
      if (rng.uniform() < 0.5) entries.emplace_back(j, (2.0 * rng.uniform() - 1.0) * 0.9 * peak);
    SparseSeq u = SparseSeq::from_pairs(std::move(entries));
    REQUIRE(static_cast<bool>(l1_subdiff_membership(scale(1.0 / peak, u), x, 1e-9)));
    // then x / |x|_1 is a subgradient of the sup norm at u
    CHECK(static_cast<bool>(
        linf_subdiff_membership(scale(1.0 / norm_l1(x), x), u, 1.0, 1e-9)));
  }
}
