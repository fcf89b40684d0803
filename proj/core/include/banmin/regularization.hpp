#ifndef BANMIN_REGULARIZATION_HPP
#define BANMIN_REGULARIZATION_HPP

#include <utility>

#include "banmin/iteration.hpp"
#include "banmin/mni.hpp"
#include "banmin/prox.hpp"
#include "banmin/report.hpp"
#include "banmin/sampling.hpp"
#include "banmin/spaces.hpp"

namespace banmin {

/// Penalty on the norm: phi(t) = t, t^2 or t^r.
struct Regularizer {
  enum class Kind { Identity, Square, Power };

  Kind kind = Kind::Square;
  double r = 2.0;  // Power exponent

  static Regularizer identity() { return {Kind::Identity, 1.0}; }
  static Regularizer square() { return {Kind::Square, 2.0}; }
  static Regularizer power(double r);

  double value(double t) const;
  /// phi'(t) / t, the factor appearing in the stationarity system.
  double derivative_over_t(double t) const;
};

/// A regularized reconstruction problem: minimize Q_y(L(f)) + lambda *
/// phi(||f||) over the chosen sequence space.
struct RegProblem {
  SamplingOperator op;
  SpaceTag space;
  LossSpec loss;
  Regularizer regularizer;
  double lambda = 1.0;

  RegProblem(SamplingOperator op, SpaceTag space, LossSpec loss, Regularizer regularizer,
             double lambda);
};

/// Hilbert space, square loss, phi(t) = t^2: the linear system
/// (G + lambda I) c = y.  Always solvable (the shifted matrix is SPD).
SolveReport solve_reg_hilbert_square(const SamplingOperator& op, const Coefs& y, double lambda);

/// Hilbert space, any loss with a prox, phi(t) = t^2: primal-dual proximal
/// iteration on the coefficients, terminating when the fixed-point residual
/// || c + prox of the conjugate loss at ((G - 2 lambda I) c) / (2 lambda) ||_inf
/// drops below cfg.tol.  Returns the best iterate with converged = false on
/// failure.
SolveReport solve_reg_hilbert_prox(const RegProblem& problem, const IterationConfig& cfg = {});

/// ell_p space, differentiable loss and regularizer: damped Newton on
///   grad Q(G_sip(c)) + lambda * phi'(n(c))/n(c) * c = 0,
/// with G_sip(c) = L(dmap_lq(L*(c), q)) and n(c) = sqrt(c^T G_sip(c)).
/// Throws NonConvergenceError on stagnation.
SolveReport solve_reg_lp_space(const RegProblem& problem, const IterationConfig& cfg = {});

/// ell_1 space with penalty lambda ||x||_1 (phi(t) = t): accelerated
/// proximal-gradient iteration for the square loss, primal-dual iteration
/// for the piecewise-linear losses; both certify through the truncated
/// fixed-point residual pair and refine onto the active face once the
/// support settles.
SolveReport solve_reg_l1(const RegProblem& problem, const IterationConfig& cfg = {});

/// Residuals of the ell_1 regularization fixed-point equations at (x, c):
///   r_dual = || c - prox of the conjugate loss at (c + L(x)) ||_inf,
///   r_prox = || x - soft_threshold(x - (1/lambda) S(L*(c)), 1) ||_1.
std::pair<double, double> reg_fixed_point_residual_l1(const RegProblem& problem,
                                                      const SparseSeq& x, const Coefs& c);

/// Outcome of re-solving minimum-norm interpolation at the regularized
/// solution's own data L(f0): with a strictly increasing penalty the norms
/// and regularized objectives must agree.
struct LinkReport {
  double reg_norm = 0.0;
  double mni_norm = 0.0;
  double reg_objective = 0.0;
  double mni_objective = 0.0;
  double norm_gap = 0.0;
  double objective_gap = 0.0;
  bool passed = false;
  SolveReport reg;
  SolveReport mni;
};

LinkReport check_mni_reg_link(const RegProblem& problem, const IterationConfig& cfg = {},
                              double tol = 1e-6);

}  // namespace banmin

#endif  // BANMIN_REGULARIZATION_HPP
