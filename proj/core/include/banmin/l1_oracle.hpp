#ifndef BANMIN_L1_ORACLE_HPP
#define BANMIN_L1_ORACLE_HPP

#include <utility>

#include "banmin/report.hpp"
#include "banmin/sampling.hpp"
#include "banmin/simplex.hpp"

namespace banmin {

/// min ||x||_1 subject to L(x) = y, solved exactly by the simplex method
/// over the union support of the rows (mass off it only raises the norm).
/// Throws InfeasibleProblemError when the constraints are inconsistent.
SolveReport basis_pursuit(const SamplingOperator& op, const Coefs& y);

/// The dual problem min ||L*(c)||_inf subject to <c, y> = 1, as an LP.
/// Returns the optimal coefficients and the optimal value; the interpolation
/// infimum is the reciprocal of the value.  Throws DegenerateInputError when
/// y = 0.
std::pair<Coefs, double> dual_inf_norm_lp(const SamplingOperator& op, const Coefs& y);

/// Reconstruction from optimal dual coefficients: with nu = L*(c_hat), finds
/// convex weights on the signed max-index vertices of nu such that the lifted
/// subgradient g satisfies L(g) = ||nu||_inf * y, and returns g / ||nu||_inf
/// (an interpolant of the optimal norm 1 / ||nu||_inf).
/// Throws NumericalDualityError when the face system is infeasible (c_hat was
/// not optimal to tolerance).
SparseSeq reconstruct_from_dual(const SamplingOperator& op, const Coefs& y, const Coefs& c_hat);

}  // namespace banmin

#endif  // BANMIN_L1_ORACLE_HPP
