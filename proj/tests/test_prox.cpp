#include <doctest.h>

#include <cmath>

#include "banmin/duality.hpp"
#include "banmin/errors.hpp"
#include "banmin/prox.hpp"
#include "helpers.hpp"

using namespace banmin;
using testutil::seq;
using testutil::vec;

TEST_CASE("soft threshold examples") {
  CHECK(soft_threshold(seq({{0, 2.0}, {1, -0.5}}), 1.0) == seq({{0, 1.0}}));
  CHECK(soft_threshold(SparseSeq{}, 1.0).empty());
  CHECK(soft_threshold(seq({{0, -3.0}}), 1.0) == seq({{0, -2.0}}));
  double oracle = prox_numeric_oracle_1d([](double b) { return std::abs(b); }, -3.0);
  CHECK(std::abs(oracle - (-2.0)) <= 1e-6);
}

TEST_CASE("shifted dual prox examples") {
  Eigen::VectorXd r = prox_indicator_conj(vec({3.0, 1.0}), vec({1.0, 1.0}), 1.0);
  CHECK(r(0) == 2.0);
  CHECK(r(1) == 0.0);
  Eigen::VectorXd self = prox_indicator_conj(vec({1.0, 1.0}), vec({1.0, 1.0}), 1.0);
  CHECK(self.norm() == 0.0);
  Eigen::VectorXd scaled = prox_indicator_conj(vec({0.0, 0.0}), vec({1.0, 2.0}), 2.0);
  CHECK(scaled(0) == -2.0);
  CHECK(scaled(1) == -4.0);
  // cross-check through the scaled Moreau identity: the prox of the
  // constraint to y is constantly y at every scale
  ProxFn const_y = [](const Eigen::VectorXd&, double) { return testutil::vec({1.0, 2.0}); };
  Eigen::VectorXd via = prox_conjugate_via_moreau(const_y, vec({0.0, 0.0}), 2.0);
  CHECK((via - scaled).norm() == 0.0);
  CHECK_THROWS_AS(prox_indicator_conj(vec({1.0}), vec({1.0, 2.0}), 1.0), ParameterError);
}

TEST_CASE("hinge prox examples") {
  CHECK(prox_hinge(2.0, 1.0, 1.0) == 2.0);
  CHECK(prox_hinge(0.5, 1.0, 1.0) == 1.0);
  CHECK(prox_hinge(0.5, -1.0, 1.0) == doctest::Approx(-0.5));
  double oracle = prox_numeric_oracle_1d(
      [](double b) { return std::max(1.0 + b, 0.0); }, 0.5);
  CHECK(std::abs(prox_hinge(0.5, -1.0, 1.0) - oracle) <= 1e-6);
}

TEST_CASE("eps-insensitive prox examples") {
  CHECK(prox_eps_insensitive(3.0, 0.0, 1.0, 1.0) == 2.0);
  CHECK(prox_eps_insensitive(1.5, 0.0, 1.0, 1.0) == 1.0);
  CHECK(prox_eps_insensitive(0.7, 0.7, 0.2, 3.0) == 0.7);
}

TEST_CASE("vector loss prox examples") {
  LossSpec sq = LossSpec::square(vec({1.0}));
  Eigen::VectorXd r = prox_vector_loss(vec({0.0}), sq, 0.5);
  CHECK(r(0) == doctest::Approx(0.5));
  double oracle =
      prox_numeric_oracle_1d([](double b) { return 0.5 * (b - 1.0) * (b - 1.0); }, 0.0);
  CHECK(std::abs(r(0) - oracle) <= 1e-6);

  LossSpec hinge = LossSpec::hinge(vec({1.0, 1.0}));
  Eigen::VectorXd h = prox_vector_loss(vec({2.0, 0.5}), hinge, 1.0);
  CHECK(h(0) == 2.0);
  CHECK(h(1) == 1.0);

  // a point that already minimizes the componentwise objective is fixed
  LossSpec eps = LossSpec::eps_insensitive(vec({0.3}), 0.4);
  Eigen::VectorXd fixed = prox_vector_loss(vec({0.3}), eps, 2.0);
  CHECK(fixed(0) == 0.3);

  CHECK_THROWS_AS(prox_vector_loss(vec({1.0, 2.0}), sq, 1.0), ParameterError);
  CHECK_THROWS_AS(LossSpec::hinge(vec({0.5})), ParameterError);
  CHECK_THROWS_AS(LossSpec::eps_insensitive(vec({1.0}), 0.0), ParameterError);
}

TEST_CASE("conjugate prox via Moreau examples") {
  ProxFn ident = [](const Eigen::VectorXd& v, double) { return v; };  // prox of the zero function
  Eigen::VectorXd z = prox_conjugate_via_moreau(ident, vec({3.0, -2.0}), 1.7);
  CHECK(z.norm() == 0.0);

  ProxFn l1 = [](const Eigen::VectorXd& v, double s) {
    Eigen::VectorXd out(v.size());
    for (Eigen::Index j = 0; j < v.size(); ++j) out(j) = soft_threshold(v(j), s);
    return out;
  };
  Eigen::VectorXd proj = prox_conjugate_via_moreau(l1, vec({0.5}), 1.0);
  CHECK(proj(0) == doctest::Approx(0.5));  // projection onto [-1, 1]
  Eigen::VectorXd clip = prox_conjugate_via_moreau(l1, vec({2.5}), 1.0);
  CHECK(clip(0) == doctest::Approx(1.0));
}

TEST_CASE("numeric oracle examples") {
  CHECK(std::abs(prox_numeric_oracle_1d([](double b) { return std::abs(b); }, 2.0) - 1.0) <=
        1e-6);
  CHECK(std::abs(prox_numeric_oracle_1d([](double) { return 0.0; }, 7.0) - 7.0) <= 1e-6);
  CHECK(std::abs(prox_numeric_oracle_1d([](double b) { return std::max(1.0 - b, 0.0); }, -1.0) -
                 prox_hinge(-1.0, 1.0, 1.0)) <= 1e-6);
}

TEST_CASE("closed forms match the numeric oracle on grids") {
  const double sigmas[] = {0.4, 1.0, 2.5};
  for (double sigma : sigmas) {
    for (int k = 0; k <= 240; ++k) {
      double a = -6.0 + 12.0 * k / 240.0;

      for (double y : {-1.0, 1.0}) {
        double closed = prox_hinge(a, y, sigma);
        double numeric = prox_numeric_oracle_1d(
            [&](double b) { return sigma * std::max(1.0 - y * b, 0.0); }, a);
        CHECK(std::abs(closed - numeric) <= 1e-6);
      }

      for (double eps : {0.3, 1.5}) {  // both regimes of the tube width
        double closed = prox_eps_insensitive(a, 0.4, eps, sigma);
        double numeric = prox_numeric_oracle_1d(
            [&](double b) { return sigma * std::max(std::abs(b - 0.4) - eps, 0.0); }, a);
        CHECK(std::abs(closed - numeric) <= 1e-6);
      }

      double sq_closed = (a + 2.0 * sigma * 0.4) / (1.0 + 2.0 * sigma);
      double sq_numeric = prox_numeric_oracle_1d(
          [&](double b) { return sigma * (b - 0.4) * (b - 0.4); }, a);
      CHECK(std::abs(sq_closed - sq_numeric) <= 1e-6);

      double st_closed = soft_threshold(a, sigma);
      double st_numeric =
          prox_numeric_oracle_1d([&](double b) { return sigma * std::abs(b); }, a);
      CHECK(std::abs(st_closed - st_numeric) <= 1e-6);
    }
  }
}

TEST_CASE("proxes are nonexpansive on random pairs") {
  Rng rng(41);
  LossSpec hinge = LossSpec::hinge(vec({1.0, -1.0, 1.0}));
  LossSpec eps = LossSpec::eps_insensitive(vec({0.5, -0.2, 0.0}), 0.7);
  LossSpec sq = LossSpec::square(vec({0.5, -0.2, 0.0}));
  for (int t = 0; t < 200; ++t) {
    Eigen::VectorXd a(3), b(3);
    for (int j = 0; j < 3; ++j) {
      a(j) = 4.0 * rng.normal();
      b(j) = 4.0 * rng.normal();
    }
    double sigma = 0.1 + 3.0 * rng.uniform();
    for (const LossSpec* loss : {&hinge, &eps, &sq}) {
      Eigen::VectorXd pa = prox_vector_loss(a, *loss, sigma);
      Eigen::VectorXd pb = prox_vector_loss(b, *loss, sigma);
      CHECK((pa - pb).norm() <= (a - b).norm() + 1e-12);
    }
    Eigen::VectorXd sa(3), sb(3);
    for (int j = 0; j < 3; ++j) {
      sa(j) = soft_threshold(a(j), sigma);
      sb(j) = soft_threshold(b(j), sigma);
    }
    CHECK((sa - sb).norm() <= (a - b).norm() + 1e-12);
  }
}

TEST_CASE("Moreau identity at unit scale") {
  Rng rng(42);
  LossSpec hinge = LossSpec::hinge(vec({1.0, -1.0}));
  LossSpec sq = LossSpec::square(vec({0.3, -1.2}));
  LossSpec eps = LossSpec::eps_insensitive(vec({0.3, -1.2}), 0.6);
  for (int t = 0; t < 200; ++t) {
    Eigen::VectorXd a(2);
    a(0) = 5.0 * rng.normal();
    a(1) = 5.0 * rng.normal();
    for (const LossSpec* loss : {&hinge, &sq, &eps}) {
      Eigen::VectorXd direct = prox_vector_loss(a, *loss, 1.0);
      Eigen::VectorXd conj = prox_loss_conj(a, *loss, 1.0);
      CHECK((direct + conj - a).lpNorm<Eigen::Infinity>() <= 1e-10);
    }
  }
}

TEST_CASE("prox-subdifferential link for the l1 norm") {
  Rng rng(43);
  for (int t = 0; t < 200; ++t) {
    // forward direction: b in the subdifferential at x implies x is the prox at x+b
    SparseSeq x = testutil::random_seq(rng, 20, 0.3);
    std::vector<SparseSeq::Entry> sub;
    for (const auto& [j, v] : x.entries()) sub.emplace_back(j, v > 0 ? 1.0 : -1.0);
    for (Index j = 21; j < 25; ++j)
      if (rng.uniform() < 0.5) sub.emplace_back(j, 2.0 * rng.uniform() - 1.0);
    SparseSeq b = SparseSeq::from_pairs(std::move(sub));
    REQUIRE(static_cast<bool>(l1_subdiff_membership(b, x, 1e-12)));
    SparseSeq back = soft_threshold(combine(1.0, x, 1.0, b), 1.0);
    CHECK(testutil::max_abs_diff(back, x) <= 1e-12);

    // converse: z - prox(z) is a subgradient at prox(z)
    SparseSeq z = testutil::random_seq(rng, 20, 0.5);
    SparseSeq px = soft_threshold(z, 1.0);
    SparseSeq residue = combine(1.0, z, -1.0, px);
    CHECK(static_cast<bool>(l1_subdiff_membership(residue, px, 1e-12)));
  }
}
