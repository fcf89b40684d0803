#include <doctest.h>

#include "banmin/errors.hpp"
#include "banmin/simplex.hpp"
#include "helpers.hpp"

using namespace banmin;
using testutil::vec;

namespace {

StandardLP make_lp(std::initializer_list<double> cost,
                   std::initializer_list<std::initializer_list<double>> rows,
                   std::initializer_list<double> rhs) {
  StandardLP lp;
  lp.cost = vec(cost);
  lp.eq_rhs = vec(rhs);
  lp.eq_matrix.resize(static_cast<Eigen::Index>(rows.size()), lp.cost.size());
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) lp.eq_matrix(i, j++) = v;
    ++i;
  }
  return lp;
}

}  // namespace

TEST_CASE("forced variable") {
  LPResult r = simplex_solve(make_lp({1.0}, {{1.0}}, {1.0}));
  REQUIRE(r.status == LPStatus::Optimal);
  CHECK(r.value == doctest::Approx(1.0));
  CHECK(r.x(0) == doctest::Approx(1.0));
}

TEST_CASE("one-constraint polytope vertex") {
  LPResult r = simplex_solve(make_lp({1.0, 1.0}, {{1.0, 0.5}}, {1.0}));
  REQUIRE(r.status == LPStatus::Optimal);
  CHECK(r.value == doctest::Approx(1.0));
  CHECK(r.x(0) == doctest::Approx(1.0));
  CHECK(r.x(1) == doctest::Approx(0.0));
}

TEST_CASE("sign conflict is infeasible") {
  LPResult r = simplex_solve(make_lp({0.0}, {{1.0}}, {-1.0}));
  CHECK(r.status == LPStatus::Infeasible);
}

TEST_CASE("unbounded problem is reported") {
  // min -x1 with x1 - x2 = 0: both can grow without bound
  LPResult r = simplex_solve(make_lp({-1.0, 0.0}, {{1.0, -1.0}}, {0.0}));
  CHECK(r.status == LPStatus::Unbounded);
}

TEST_CASE("Beale cycling instance terminates under Bland's rule") {
  // slacks included explicitly; optimum is -1/20
  LPResult r = simplex_solve(make_lp(
      {-0.75, 150.0, -0.02, 6.0, 0.0, 0.0, 0.0},
      {{0.25, -60.0, -1.0 / 25.0, 9.0, 1.0, 0.0, 0.0},
       {0.5, -90.0, -1.0 / 50.0, 3.0, 0.0, 1.0, 0.0},
       {0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0}},
      {0.0, 0.0, 1.0}));
  REQUIRE(r.status == LPStatus::Optimal);
  CHECK(r.value == doctest::Approx(-0.05).epsilon(1e-9));
}

TEST_CASE("dimension and finiteness validation") {
  StandardLP lp = make_lp({1.0, 2.0}, {{1.0, 1.0}}, {1.0});
  lp.cost = vec({1.0});
  CHECK_THROWS_AS(simplex_solve(lp), ParameterError);
}

TEST_CASE("random LPs satisfy their constraints at the optimum") {
  Rng rng(51);
  for (int t = 0; t < 50; ++t) {
    const Eigen::Index n = 6, m = 3;
    StandardLP lp;
    lp.cost.resize(n);
    lp.eq_matrix.resize(m, n);
    for (Eigen::Index j = 0; j < n; ++j) lp.cost(j) = rng.normal();
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < n; ++j) lp.eq_matrix(i, j) = rng.normal();
    // make the rhs reachable so the LP is feasible
    Eigen::VectorXd x0(n);
    for (Eigen::Index j = 0; j < n; ++j) x0(j) = rng.uniform();
    lp.eq_rhs = lp.eq_matrix * x0;

    LPResult r = simplex_solve(lp);
    if (r.status != LPStatus::Optimal) continue;  // unbounded draws are fine
    CHECK((lp.eq_matrix * r.x - lp.eq_rhs).lpNorm<Eigen::Infinity>() <= 1e-9);
    CHECK(r.x.minCoeff() >= -1e-12);
    CHECK(r.value <= lp.cost.dot(x0) + 1e-9);  // no worse than the known feasible point
  }
}
