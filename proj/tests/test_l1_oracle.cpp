#include <doctest.h>

#include <cmath>

#include "banmin/duality.hpp"
#include "banmin/errors.hpp"
#include "banmin/l1_oracle.hpp"
#include "banmin/verify.hpp"
#include "helpers.hpp"

using namespace banmin;
using testutil::make_op;
using testutil::seq;
using testutil::vec;

TEST_CASE("basis pursuit desk examples") {
  SamplingOperator op = make_op({{{0, 1.0}, {1, 0.5}}});
  SolveReport r = basis_pursuit(op, vec({1.0}));
  CHECK(r.objective == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(testutil::max_abs_diff(r.solution, seq({{0, 1.0}})) <= 1e-12);

  SamplingOperator basis = make_op({{{0, 1.0}}, {{1, 1.0}}});
  SolveReport pinned = basis_pursuit(basis, vec({2.0, 3.0}));
  CHECK(pinned.objective == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(testutil::max_abs_diff(pinned.solution, seq({{0, 2.0}, {1, 3.0}})) <= 1e-12);

  SolveReport zero = basis_pursuit(basis, vec({0.0, 0.0}));
  CHECK(zero.objective == 0.0);
  CHECK(zero.solution.empty());
}

TEST_CASE("basis pursuit reports inconsistent data as infeasible") {
  // one row is empty, so its datum cannot be matched
  std::vector<SparseSeq> rows{seq({{0, 1.0}}), SparseSeq{}};
  SamplingOperator op{std::move(rows)};
  CHECK_THROWS_AS(basis_pursuit(op, vec({1.0, 1.0})), InfeasibleProblemError);
}

TEST_CASE("dual LP desk examples") {
  SamplingOperator op = make_op({{{0, 1.0}, {1, 0.5}}});
  auto [c1, v1] = dual_inf_norm_lp(op, vec({1.0}));
  CHECK(c1(0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(v1 == doctest::Approx(1.0).epsilon(1e-10));

  SamplingOperator single = make_op({{{0, 1.0}}});
  auto [c2, v2] = dual_inf_norm_lp(single, vec({2.0}));
  CHECK(c2(0) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(v2 == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(1.0 / v2 == doctest::Approx(2.0));

  SamplingOperator basis = make_op({{{0, 1.0}}, {{1, 1.0}}});
  auto [c3, v3] = dual_inf_norm_lp(basis, vec({1.0, 0.0}));
  CHECK(v3 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(c3(0) == doctest::Approx(1.0).epsilon(1e-10));

  CHECK_THROWS_AS(dual_inf_norm_lp(basis, vec({0.0, 0.0})), DegenerateInputError);
}

TEST_CASE("reconstruction desk examples") {
  SamplingOperator op = make_op({{{0, 1.0}, {1, 0.5}}});
  SparseSeq x = reconstruct_from_dual(op, vec({1.0}), vec({1.0}));
  CHECK(testutil::max_abs_diff(x, seq({{0, 1.0}})) <= 1e-12);

  SamplingOperator basis = make_op({{{0, 1.0}}, {{1, 1.0}}});
  auto [c_hat, value] = dual_inf_norm_lp(basis, vec({2.0, 3.0}));
  SparseSeq rec = reconstruct_from_dual(basis, vec({2.0, 3.0}), c_hat);
  CHECK((basis.apply_L(rec) - vec({2.0, 3.0})).lpNorm<Eigen::Infinity>() <= 1e-9);
  CHECK(norm_l1(rec) == doctest::Approx(5.0).epsilon(1e-10));

  // homogeneity: scaling the datum scales the reconstruction
  double alpha = 3.5;
  SparseSeq scaled = reconstruct_from_dual(op, vec({alpha}), vec({1.0 / alpha}));
  CHECK(testutil::max_abs_diff(scaled, scale(alpha, x)) <= 1e-9);
}

TEST_CASE("strong duality and reconstruction on random instances") {
  Rng rng(61);
  for (int t = 0; t < 60; ++t) {
    RandomInstance inst = random_instance(rng);
    SolveReport bp = basis_pursuit(inst.op, inst.y);
    auto [c_hat, value] = dual_inf_norm_lp(inst.op, inst.y);
    CHECK(std::abs(bp.objective * value - 1.0) <= 1e-8);

    SparseSeq rec = reconstruct_from_dual(inst.op, inst.y, c_hat);
    CHECK((inst.op.apply_L(rec) - inst.y).lpNorm<Eigen::Infinity>() <= 1e-8);
    CHECK(std::abs(norm_l1(rec) - bp.objective) <= 1e-8);

    Membership mem =
        linf_subdiff_membership(rec, inst.op.apply_Lstar(c_hat), 1.0 / value, 1e-8);
    CHECK(mem.accepted);
  }
}
