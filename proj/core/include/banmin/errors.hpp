#ifndef BANMIN_ERRORS_HPP
#define BANMIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace banmin {

// Bad argument values (invalid exponent, length mismatch, malformed input).
class ParameterError : public std::invalid_argument {
public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Inputs on which the requested quantity is not defined (zero functional,
// zero datum where a reciprocal is taken, numerically singular Gram matrix).
class DegenerateInputError : public std::runtime_error {
public:
  explicit DegenerateInputError(const std::string& what) : std::runtime_error(what) {}
};

// An iterative solver ran out of iterations; carries the best residual seen.
class NonConvergenceError : public std::runtime_error {
public:
  NonConvergenceError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual(best_residual) {}
  double best_residual;
};

// A primal/dual pair failed a consistency check that exact duality guarantees.
class NumericalDualityError : public std::runtime_error {
public:
  explicit NumericalDualityError(const std::string& what) : std::runtime_error(what) {}
};

// The 1-D numeric prox oracle could not bracket a minimizer.
class OracleError : public std::runtime_error {
public:
  explicit OracleError(const std::string& what) : std::runtime_error(what) {}
};

// Linear program has no feasible point.
class InfeasibleProblemError : public std::runtime_error {
public:
  explicit InfeasibleProblemError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace banmin

#endif  // BANMIN_ERRORS_HPP
