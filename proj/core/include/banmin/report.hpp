#ifndef BANMIN_REPORT_HPP
#define BANMIN_REPORT_HPP

#include <optional>
#include <vector>

#include "banmin/sampling.hpp"
#include "banmin/sparse_seq.hpp"

namespace banmin {

/// Everything a solver hands back: the interpolant/estimate, the coefficient
/// vector behind it, objective value, residual diagnostics and iteration
/// bookkeeping.
struct SolveReport {
  SparseSeq solution;
  Coefs coefs;
  double objective = 0.0;
  double infimum_dual = 0.0;
  double interp_residual = 0.0;
  std::optional<double> fixed_point_residual;  // max of the pair when tracked
  std::vector<Index> support;
  long iterations = 0;
  bool converged = true;
};

}  // namespace banmin

#endif  // BANMIN_REPORT_HPP
