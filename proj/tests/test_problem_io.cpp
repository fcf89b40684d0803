#include <doctest.h>

#include <string>

#include "banmin/errors.hpp"
#include "banmin/problem_io.hpp"
#include "helpers.hpp"

using namespace banmin;

TEST_CASE("minimal interpolation instance parses") {
  ProblemInstance inst = parse_problem(R"({
    "space": "l1",
    "rows": [[[0, 1.0], [1, 0.5]]],
    "y": [1.0]
  })");
  CHECK(inst.space.is_l1());
  CHECK(inst.rows.size() == 1);
  CHECK(inst.y(0) == 1.0);
  CHECK_FALSE(inst.is_regularization());
}

TEST_CASE("dimension mismatch is a distinct error") {
  CHECK_THROWS_WITH_AS(
      parse_problem(R"({"space": "l1", "rows": [[[0, 1.0]]], "y": [1.0, 2.0]})"),
      doctest::Contains("dimension mismatch"), ParameterError);
}

TEST_CASE("lp exponent must exceed one") {
  CHECK_THROWS_AS(
      parse_problem(R"({"space": "lp", "p": 1.0, "rows": [[[0, 1.0]]], "y": [1.0]})"),
      ParameterError);
}

TEST_CASE("schema violations carry field paths") {
  CHECK_THROWS_WITH_AS(parse_problem(R"({"rows": [[[0, 1.0]]], "y": [1.0]})"),
                       doctest::Contains("space"), ParameterError);
  CHECK_THROWS_WITH_AS(
      parse_problem(R"({"space": "l1", "rows": [[[0, 1.0], [1]]], "y": [1.0]})"),
      doctest::Contains("rows[0][1]"), ParameterError);
  CHECK_THROWS_WITH_AS(
      parse_problem(
          R"({"space": "l1", "rows": [[[0, 1.0]]], "y": [1.0], "loss": {"kind": "square"}})"),
      doctest::Contains("lambda"), ParameterError);
  CHECK_THROWS_WITH_AS(parse_problem("{nope"), doctest::Contains("parse error"), ParameterError);
}

TEST_CASE("regularization instance with defaults") {
  ProblemInstance inst = parse_problem(R"({
    "space": "l1",
    "rows": [[[0, 1.0]]],
    "y": [2.0],
    "loss": {"kind": "square"},
    "lambda": 1.0
  })");
  CHECK(inst.is_regularization());
  CHECK(inst.regularizer.kind == Regularizer::Kind::Identity);
  RegProblem p = inst.make_reg_problem();
  CHECK(p.lambda == 1.0);

  ProblemInstance hp = parse_problem(R"({
    "space": "hilbert",
    "rows": [[[0, 1.0]]],
    "y": [1.0],
    "loss": {"kind": "hinge"},
    "lambda": 0.5
  })");
  CHECK(hp.regularizer.kind == Regularizer::Kind::Square);

  CHECK_THROWS_AS(parse_problem(R"({
    "space": "hilbert",
    "rows": [[[0, 1.0]]],
    "y": [0.5],
    "loss": {"kind": "hinge"},
    "lambda": 0.5
  })"),
                  ParameterError);  // hinge labels must be +-1
}

TEST_CASE("solver overrides parse") {
  ProblemInstance inst = parse_problem(R"({
    "space": "lp", "p": 3.0,
    "rows": [[[0, 1.0]]],
    "y": [1.0],
    "solver": {"tol": 1e-6, "max_iter": 500, "relaxation": 0.5}
  })");
  CHECK(inst.iteration.tol == 1e-6);
  CHECK(inst.iteration.max_iter == 500);
  CHECK(inst.iteration.relaxation == 0.5);
}

TEST_CASE("round trip through serialization") {
  ProblemInstance inst = parse_problem(R"({
    "space": "lp", "p": 2.5,
    "rows": [[[0, 0.1], [7, -3.25]], [[2, 1.0]]],
    "y": [0.25, -1.5],
    "loss": {"kind": "eps_insensitive", "eps": 0.75},
    "lambda": 0.125,
    "regularizer": {"kind": "power", "r": 1.5}
  })");
  ProblemInstance back = parse_problem(problem_to_json(inst));
  CHECK(back.space.is_lp());
  CHECK(back.space.p == inst.space.p);
  REQUIRE(back.rows.size() == inst.rows.size());
  for (std::size_t i = 0; i < back.rows.size(); ++i) CHECK(back.rows[i] == inst.rows[i]);
  CHECK((back.y - inst.y).norm() == 0.0);
  CHECK(back.loss->kind == inst.loss->kind);
  CHECK(back.loss->eps == inst.loss->eps);
  CHECK(back.lambda == inst.lambda);
  CHECK(back.regularizer.kind == inst.regularizer.kind);
  CHECK(back.regularizer.r == inst.regularizer.r);
  CHECK(problem_to_json(back) == problem_to_json(inst));
}
