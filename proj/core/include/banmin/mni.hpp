#ifndef BANMIN_MNI_HPP
#define BANMIN_MNI_HPP

#include <utility>

#include "banmin/iteration.hpp"
#include "banmin/report.hpp"
#include "banmin/sampling.hpp"
#include "banmin/spaces.hpp"

namespace banmin {

/// Hilbert minimum-norm interpolation: solve G c = y and return L*(c).
/// Requires the Gram matrix to be numerically positive definite
/// (smallest eigenvalue > 1e-10), otherwise throws DegenerateInputError.
SolveReport solve_mni_hilbert(const SamplingOperator& op, const Coefs& y);

/// ell_p minimum-norm interpolation for p in (1, inf): damped Newton on
/// F(c) = L(dmap_lq(L*(c), q)) - y = 0 with finite-difference Jacobian and
/// objective backtracking (F is the gradient of the smooth convex function
/// c -> 1/2 ||L*(c)||_q^2 - <y, c>).  The interpolant is dmap_lq(L*(c), q).
/// Throws NonConvergenceError (carrying the best residual) on stagnation.
SolveReport solve_mni_lp_space(const SamplingOperator& op, const Coefs& y, double p,
                               const IterationConfig& cfg = {});

/// ell_1 minimum-norm interpolation: extrapolated primal-dual proximal
/// iteration (soft-threshold primal step, shifted dual step), with an
/// active-face refinement once the support settles.  Convergence is declared
/// when both truncated fixed-point residuals fall below cfg.tol; otherwise
/// the best iterate is returned with converged = false.
SolveReport solve_mni_l1(const SamplingOperator& op, const Coefs& y,
                         const IterationConfig& cfg = {});

/// The pair of fixed-point residuals certifying an ell_1 interpolation
/// solution/multiplier pair:
///   r_interp = || prox of the shifted dual step at (c + L(x))minus c ||_inf
///              (equals ||L(x) - y||_inf),
///   r_prox   = || x - soft_threshold(x - S(L*(c)), 1) ||_1
/// with S the sup-norm truncation operator.
std::pair<double, double> fixed_point_residual_l1(const SamplingOperator& op, const Coefs& y,
                                                  const SparseSeq& x, const Coefs& c);

/// Optimal-value identity evaluated from coefficients: ||L*(c)||_q for Lp
/// (conjugate q), sqrt(c^T G c) for Hilbert, and 1 / ||L*(c)||_inf for L1
/// dual coefficients (DegenerateInputError when that functional vanishes).
double infimum_report(const SamplingOperator& op, const Coefs& coefs, const SpaceTag& space);

}  // namespace banmin

#endif  // BANMIN_MNI_HPP
