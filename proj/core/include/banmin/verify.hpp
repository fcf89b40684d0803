#ifndef BANMIN_VERIFY_HPP
#define BANMIN_VERIFY_HPP

#include <string>
#include <vector>

#include "banmin/iteration.hpp"
#include "banmin/random.hpp"
#include "banmin/sampling.hpp"
#include "banmin/spaces.hpp"

namespace banmin {

struct CheckReport {
  std::string name;
  bool passed = false;
  double max_violation = 0.0;
  std::string details;
};

/// Peak identity: the combined functional nu = L*(coefs) attains its bound
/// at x, i.e. <nu, x> = ||nu||_dual ||x||_space.  For L1 the functional norm
/// is the sup norm of the pre-dual element.
CheckReport check_peak_functional(const SpaceTag& space, const SamplingOperator& op,
                                  const Coefs& coefs, const SparseSeq& x, double tol = 1e-8);

/// Optimal-value identity: the primal objective equals the coefficient
/// functional's norm (Hilbert, Lp), or primal x dual LP value = 1 (L1,
/// where coefs are the normalized dual coefficients).
CheckReport check_duality_infimum(const SpaceTag& space, double primal_objective,
                                  const SamplingOperator& op, const Coefs& coefs,
                                  double tol = 1e-7);

/// Support inclusion: every support index of x lies in the max index set of
/// L*(c).  Vacuously true for x = 0.
CheckReport check_support_inclusion(const SparseSeq& x, const Coefs& c,
                                    const SamplingOperator& op);

struct RandomInstance {
  SamplingOperator op;
  Coefs y;
};

/// Desk-scale random instance: m in [1,6] functionals over a union support
/// of 3..40 indices, standard-normal entries sparsified by a random keep
/// probability, rows nudged to have strictly distinct top magnitudes and to
/// be numerically independent.
RandomInstance random_instance(Rng& rng);

/// Stress variant with exact magnitude ties inside rows, exercising the
/// max-index tolerance path.
RandomInstance random_tie_instance(Rng& rng);

struct SuiteConfig {
  std::uint64_t seed = 0;
  int instances = 100;
  IterationConfig iteration;
};

struct SuiteResult {
  std::vector<CheckReport> reports;
  int passed = 0;
  int failed = 0;
};

/// Runs the identity checks over seeded random instances across the three
/// spaces (Hilbert, rotating Lp, L1 with the LP oracle cross-checks).
/// Identical seeds produce identical reports.
SuiteResult run_suite(const SuiteConfig& cfg);

/// One JSON object per line, in report order; byte-stable for a fixed seed.
std::string reports_to_json_lines(const std::vector<CheckReport>& reports);

}  // namespace banmin

#endif  // BANMIN_VERIFY_HPP
