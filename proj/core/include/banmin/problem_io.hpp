#ifndef BANMIN_PROBLEM_IO_HPP
#define BANMIN_PROBLEM_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "banmin/iteration.hpp"
#include "banmin/json_out.hpp"
#include "banmin/prox.hpp"
#include "banmin/regularization.hpp"
#include "banmin/report.hpp"
#include "banmin/sampling.hpp"
#include "banmin/spaces.hpp"

namespace banmin {

/// One problem file: interpolation when loss/lambda are absent, regularized
/// reconstruction when both are present.
struct ProblemInstance {
  SpaceTag space;
  std::vector<SparseSeq> rows;
  Coefs y;
  std::optional<LossSpec> loss;
  std::optional<double> lambda;
  Regularizer regularizer;  // defaults per space when absent in the file
  IterationConfig iteration;

  bool is_regularization() const { return loss.has_value() && lambda.has_value(); }
  SamplingOperator make_operator() const { return SamplingOperator(rows); }
  RegProblem make_reg_problem() const;
};

/// Parse error, schema error (with field paths) and dimension mismatches are
/// reported as ParameterError with distinct messages.
ProblemInstance load_problem(const std::string& path);
ProblemInstance parse_problem(const std::string& json_text);

std::string problem_to_json(const ProblemInstance& instance);

JsonValue sparse_seq_to_json(const SparseSeq& x);
JsonValue report_to_json(const SolveReport& report);

}  // namespace banmin

#endif  // BANMIN_PROBLEM_IO_HPP
