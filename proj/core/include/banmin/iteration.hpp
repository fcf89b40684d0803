#ifndef BANMIN_ITERATION_HPP
#define BANMIN_ITERATION_HPP

namespace banmin {

/// Knobs shared by the iterative solvers.  Zero step sizes mean "derive from
/// the operator norm" so that step_primal * step_dual * ||L||^2 <= 0.95.
struct IterationConfig {
  long max_iter = 200000;
  double tol = 1e-9;
  double step_primal = 0.0;  // tau
  double step_dual = 0.0;    // sigma
  double relaxation = 1.0;   // extrapolation weight theta in [0, 1]
};

}  // namespace banmin

#endif  // BANMIN_ITERATION_HPP
