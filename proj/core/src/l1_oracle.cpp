#include "banmin/l1_oracle.hpp"

#include <cmath>
#include <string>

#include "banmin/duality.hpp"
#include "banmin/errors.hpp"

namespace banmin {

SolveReport basis_pursuit(const SamplingOperator& op, const Coefs& y) {
  if (static_cast<std::size_t>(y.size()) != op.m())
    throw ParameterError("basis_pursuit: datum length does not match operator size");
  const Eigen::Index m = static_cast<Eigen::Index>(op.m());
  const Eigen::Index n = static_cast<Eigen::Index>(op.union_support().size());

  // Split x = xp - xm, both nonnegative; minimize the total mass.
  StandardLP lp;
  lp.cost = Eigen::VectorXd::Ones(2 * n);
  lp.eq_matrix.resize(m, 2 * n);
  lp.eq_matrix << op.dense(), -op.dense();
  lp.eq_rhs = y;

  LPResult res = simplex_solve(lp);
  if (res.status == LPStatus::Infeasible)
    throw InfeasibleProblemError("basis_pursuit: interpolation constraints are inconsistent");
  if (res.status == LPStatus::Unbounded)
    throw NumericalDualityError("basis_pursuit: LP unbounded (should be impossible)");

  Eigen::VectorXd x = res.x.head(n) - res.x.tail(n);
  SolveReport report;
  report.solution = op.lift(x);
  report.coefs = Coefs::Zero(m);
  report.objective = norm_l1(report.solution);
  report.infimum_dual = report.objective;
  report.interp_residual = (op.apply_L(report.solution) - y).lpNorm<Eigen::Infinity>();
  report.support = report.solution.support();
  report.converged = true;
  return report;
}

std::pair<Coefs, double> dual_inf_norm_lp(const SamplingOperator& op, const Coefs& y) {
  if (static_cast<std::size_t>(y.size()) != op.m())
    throw ParameterError("dual_inf_norm_lp: datum length does not match operator size");
  if (y.lpNorm<Eigen::Infinity>() == 0.0)
    throw DegenerateInputError("dual_inf_norm_lp: zero datum has no normalized dual problem");

  const Eigen::Index m = static_cast<Eigen::Index>(op.m());
  const Eigen::Index n = static_cast<Eigen::Index>(op.union_support().size());
  const Eigen::MatrixXd& u = op.dense();

  // Variables: [cp(m), cm(m), t(1), s1(n), s2(n)].
  // Rows j:     t - (L*c)_j - s1_j = 0
  //             t + (L*c)_j - s2_j = 0
  // Last row:   <cp - cm, y> = 1
  const Eigen::Index nv = 2 * m + 1 + 2 * n;
  StandardLP lp;
  lp.cost = Eigen::VectorXd::Zero(nv);
  lp.cost(2 * m) = 1.0;
  lp.eq_matrix.setZero(2 * n + 1, nv);
  lp.eq_rhs.setZero(2 * n + 1);
  for (Eigen::Index j = 0; j < n; ++j) {
    lp.eq_matrix.block(j, 0, 1, m) = -u.col(j).transpose();
    lp.eq_matrix.block(j, m, 1, m) = u.col(j).transpose();
    lp.eq_matrix(j, 2 * m) = 1.0;
    lp.eq_matrix(j, 2 * m + 1 + j) = -1.0;

    lp.eq_matrix.block(n + j, 0, 1, m) = u.col(j).transpose();
    lp.eq_matrix.block(n + j, m, 1, m) = -u.col(j).transpose();
    lp.eq_matrix(n + j, 2 * m) = 1.0;
    lp.eq_matrix(n + j, 2 * m + 1 + n + j) = -1.0;
  }
  lp.eq_matrix.block(2 * n, 0, 1, m) = y.transpose();
  lp.eq_matrix.block(2 * n, m, 1, m) = -y.transpose();
  lp.eq_rhs(2 * n) = 1.0;

  LPResult res = simplex_solve(lp);
  if (res.status != LPStatus::Optimal)
    throw NumericalDualityError("dual_inf_norm_lp: LP did not reach an optimum");
  Coefs c_hat = res.x.head(m) - res.x.segment(m, m);
  return {c_hat, res.value};
}

SparseSeq reconstruct_from_dual(const SamplingOperator& op, const Coefs& y, const Coefs& c_hat) {
  SparseSeq nu = op.apply_Lstar(c_hat);
  if (nu.empty())
    throw DegenerateInputError("reconstruct_from_dual: L*(c_hat) vanishes");
  SubdiffFaceLinf face = linf_face(nu);
  const Eigen::Index m = static_cast<Eigen::Index>(op.m());
  const Eigen::Index f = static_cast<Eigen::Index>(face.max_indices.size());

  // Feasibility LP for the convex weights over the signed face vertices.
  // A subgradient g of the sup norm at nu has unit l1 norm, so the correct
  // target is L(g) = ||nu||_inf * y and the interpolant is g / ||nu||_inf
  // (the infimum is 1 / ||nu||_inf, matching the scheme's own theorem).
  StandardLP lp;
  lp.cost = Eigen::VectorXd::Zero(f);
  lp.eq_matrix.setZero(m + 1, f);
  lp.eq_rhs.resize(m + 1);
  for (Eigen::Index k = 0; k < f; ++k) {
    SparseSeq vertex = SparseSeq::unit(face.max_indices[static_cast<std::size_t>(k)],
                                       static_cast<double>(face.signs[static_cast<std::size_t>(k)]));
    lp.eq_matrix.block(0, k, m, 1) = op.apply_L(vertex);
    lp.eq_matrix(m, k) = 1.0;
  }
  lp.eq_rhs.head(m) = face.norm_value * y;
  lp.eq_rhs(m) = 1.0;

  LPResult res = simplex_solve(lp);
  if (res.status != LPStatus::Optimal)
    throw NumericalDualityError(
        "reconstruct_from_dual: face system infeasible; dual coefficients not optimal to "
        "tolerance");

  std::vector<SparseSeq::Entry> entries;
  for (Eigen::Index k = 0; k < f; ++k) {
    double w = res.x(k);
    if (w == 0.0) continue;
    entries.emplace_back(face.max_indices[static_cast<std::size_t>(k)],
                         w * face.signs[static_cast<std::size_t>(k)] / face.norm_value);
  }
  return SparseSeq::from_pairs(std::move(entries));
}

}  // namespace banmin
