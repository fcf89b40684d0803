// Command-line front end: load problem instances, dispatch solvers and
// oracles, emit JSON reports on stdout.
//
// Exit codes: 0 success/converged, 1 input error, 2 non-convergence.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "banmin/errors.hpp"
#include "banmin/json_out.hpp"
#include "banmin/l1_oracle.hpp"
#include "banmin/mni.hpp"
#include "banmin/problem_io.hpp"
#include "banmin/prox.hpp"
#include "banmin/regularization.hpp"
#include "banmin/verify.hpp"

namespace {

using namespace banmin;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitNoConvergence = 2;

struct OutputSink {
  std::string path;  // empty: stdout only

  void emit(const std::string& text) const {
    std::cout << text;
    if (!path.empty()) {
      std::ofstream f(path);
      if (!f) throw ParameterError("cannot open output file: " + path);
      f << text;
    }
  }
};

void apply_overrides(ProblemInstance& inst, std::optional<double> tol,
                     std::optional<long> max_iter) {
  if (tol) inst.iteration.tol = *tol;
  if (max_iter) inst.iteration.max_iter = *max_iter;
}

int emit_report(const SolveReport& report, const std::string& space, const OutputSink& sink) {
  JsonValue root = report_to_json(report);
  root.set("space", space);
  sink.emit(root.dump() + "\n");
  return report.converged ? kExitOk : kExitNoConvergence;
}

int cmd_mni_solve(const ProblemInstance& inst, const OutputSink& sink) {
  SamplingOperator op = inst.make_operator();
  SolveReport report;
  switch (inst.space.kind) {
    case SpaceTag::Kind::Hilbert: report = solve_mni_hilbert(op, inst.y); break;
    case SpaceTag::Kind::Lp:
      report = solve_mni_lp_space(op, inst.y, inst.space.p, inst.iteration);
      break;
    case SpaceTag::Kind::L1: report = solve_mni_l1(op, inst.y, inst.iteration); break;
  }
  return emit_report(report, inst.space.name(), sink);
}

int cmd_reg_solve(const ProblemInstance& inst, const OutputSink& sink) {
  if (!inst.is_regularization())
    throw ParameterError("reg solve: instance file has no loss/lambda");
  RegProblem problem = inst.make_reg_problem();
  SolveReport report;
  switch (inst.space.kind) {
    case SpaceTag::Kind::Hilbert:
      report = (problem.loss.kind == LossSpec::Kind::Square &&
                problem.regularizer.kind == Regularizer::Kind::Square)
                   ? solve_reg_hilbert_square(problem.op, problem.loss.y, problem.lambda)
                   : solve_reg_hilbert_prox(problem, inst.iteration);
      break;
    case SpaceTag::Kind::Lp: report = solve_reg_lp_space(problem, inst.iteration); break;
    case SpaceTag::Kind::L1: report = solve_reg_l1(problem, inst.iteration); break;
  }
  return emit_report(report, inst.space.name(), sink);
}

int cmd_oracle_bp(const ProblemInstance& inst, const OutputSink& sink) {
  SamplingOperator op = inst.make_operator();
  SolveReport report = basis_pursuit(op, inst.y);
  return emit_report(report, "l1", sink);
}

int cmd_oracle_dual(const ProblemInstance& inst, const OutputSink& sink) {
  SamplingOperator op = inst.make_operator();
  auto [c_hat, value] = dual_inf_norm_lp(op, inst.y);
  JsonValue root = JsonValue::object();
  JsonValue coefs = JsonValue::array();
  for (Eigen::Index k = 0; k < c_hat.size(); ++k) coefs.push_back(c_hat(k));
  root.set("c_hat", std::move(coefs));
  root.set("value", value);
  root.set("infimum", 1.0 / value);
  SparseSeq rec = reconstruct_from_dual(op, inst.y, c_hat);
  root.set("reconstruction", sparse_seq_to_json(rec));
  sink.emit(root.dump() + "\n");
  return kExitOk;
}

int cmd_verify_suite(std::uint64_t seed, int instances, const OutputSink& sink) {
  SuiteConfig cfg;
  cfg.seed = seed;
  cfg.instances = instances;
  SuiteResult result = run_suite(cfg);
  std::string text = reports_to_json_lines(result.reports);
  JsonValue summary = JsonValue::object();
  summary.set("passed", static_cast<long long>(result.passed));
  summary.set("failed", static_cast<long long>(result.failed));
  summary.set("total", static_cast<long long>(result.passed + result.failed));
  text += summary.dump() + "\n";
  sink.emit(text);
  return result.failed == 0 ? kExitOk : kExitNoConvergence;
}

int cmd_prox_eval(const std::string& loss, double a, double y, double eps, double sigma,
                  double tau, const OutputSink& sink) {
  double value = 0.0;
  if (loss == "hinge") {
    if (y != 1.0 && y != -1.0) throw ParameterError("prox eval: hinge label must be +1 or -1");
    value = prox_hinge(a, y, sigma);
  } else if (loss == "eps_insensitive") {
    if (!(eps > 0.0)) throw ParameterError("prox eval: eps must be positive");
    value = prox_eps_insensitive(a, y, eps, sigma);
  } else if (loss == "square") {
    value = (a + 2.0 * sigma * y) / (1.0 + 2.0 * sigma);
  } else if (loss == "l1") {
    value = soft_threshold(a, tau);
  } else {
    throw ParameterError("prox eval: unknown loss '" + loss + "'");
  }
  JsonValue root = JsonValue::object();
  root.set("value", value);
  sink.emit(root.dump() + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimum-norm interpolation and regularized learning in sequence spaces"};
  app.require_subcommand(1);

  std::string file, out_path;
  std::optional<double> tol;
  std::optional<long> max_iter;
  std::uint64_t seed = 0;
  int instances = 100;
  std::string loss_kind = "hinge";
  double a = 0.0, label = 0.0, eps = 1.0, sigma = 1.0, tau = 1.0;

  auto add_common = [&](CLI::App* sub, bool with_solver_flags) {
    sub->add_option("file", file, "problem instance (JSON)")->required();
    sub->add_option("--out", out_path, "also write the report to this file");
    if (with_solver_flags) {
      sub->add_option("--tol", [&tol](const std::vector<std::string>& v) {
        tol = std::stod(v[0]);
        return true;
      }, "override solver tolerance");
      sub->add_option("--max-iter", [&max_iter](const std::vector<std::string>& v) {
        max_iter = std::stol(v[0]);
        return true;
      }, "override iteration cap");
    }
  };

  CLI::App* mni = app.add_subcommand("mni", "minimum-norm interpolation");
  CLI::App* mni_solve = mni->add_subcommand("solve", "solve an interpolation instance");
  add_common(mni_solve, true);

  CLI::App* reg = app.add_subcommand("reg", "regularized reconstruction");
  CLI::App* reg_solve = reg->add_subcommand("solve", "solve a regularization instance");
  add_common(reg_solve, true);

  CLI::App* oracle = app.add_subcommand("oracle", "linear-programming reference solvers");
  CLI::App* oracle_bp = oracle->add_subcommand("bp", "basis-pursuit LP");
  add_common(oracle_bp, false);
  CLI::App* oracle_dual = oracle->add_subcommand("dual", "dual sup-norm LP and reconstruction");
  add_common(oracle_dual, false);

  CLI::App* verify = app.add_subcommand("verify", "identity check suites");
  CLI::App* verify_suite = verify->add_subcommand("suite", "run the randomized check suite");
  verify_suite->add_option("--seed", seed, "suite seed");
  verify_suite->add_option("--instances", instances, "number of random instances");
  verify_suite->add_option("--out", out_path, "also write the reports to this file");

  CLI::App* prox = app.add_subcommand("prox", "proximity operators");
  CLI::App* prox_eval = prox->add_subcommand("eval", "evaluate a scalar prox");
  prox_eval->add_option("--loss", loss_kind, "square | hinge | eps_insensitive | l1");
  prox_eval->add_option("--a", a, "evaluation point")->required();
  prox_eval->add_option("--y", label, "datum / label");
  prox_eval->add_option("--eps", eps, "tube half-width");
  prox_eval->add_option("--sigma", sigma, "prox scale");
  prox_eval->add_option("--tau", tau, "soft-threshold level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInputError;
  }

  OutputSink sink{out_path};
  try {
    if (mni_solve->parsed()) {
      ProblemInstance inst = load_problem(file);
      apply_overrides(inst, tol, max_iter);
      return cmd_mni_solve(inst, sink);
    }
    if (reg_solve->parsed()) {
      ProblemInstance inst = load_problem(file);
      apply_overrides(inst, tol, max_iter);
      return cmd_reg_solve(inst, sink);
    }
    if (oracle_bp->parsed()) return cmd_oracle_bp(load_problem(file), sink);
    if (oracle_dual->parsed()) return cmd_oracle_dual(load_problem(file), sink);
    if (verify_suite->parsed()) return cmd_verify_suite(seed, instances, sink);
    if (prox_eval->parsed()) return cmd_prox_eval(loss_kind, a, label, eps, sigma, tau, sink);
    std::cerr << "no subcommand given\n" << app.help();
    return kExitInputError;
  } catch (const NonConvergenceError& e) {
    std::cerr << "non-convergence: " << e.what() << " (best residual " << e.best_residual
              << ")\n";
    return kExitNoConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
