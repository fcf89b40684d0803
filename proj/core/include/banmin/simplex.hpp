#ifndef BANMIN_SIMPLEX_HPP
#define BANMIN_SIMPLEX_HPP

#include <Eigen/Core>

namespace banmin {

/// min cost . x  subject to  eq_matrix x = eq_rhs, x >= 0.
struct StandardLP {
  Eigen::VectorXd cost;
  Eigen::MatrixXd eq_matrix;
  Eigen::VectorXd eq_rhs;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  double value = 0.0;
  Eigen::VectorXd x;
};

/// Dense two-phase tableau simplex with Bland's anti-cycling rule.
/// Optimal results satisfy ||Ax - b||_inf <= 1e-9.
LPResult simplex_solve(const StandardLP& lp, double pivot_tol = 1e-11);

}  // namespace banmin

#endif  // BANMIN_SIMPLEX_HPP
