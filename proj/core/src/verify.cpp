#include "banmin/verify.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "banmin/duality.hpp"
#include "banmin/errors.hpp"
#include "banmin/json_out.hpp"
#include "banmin/l1_oracle.hpp"
#include "banmin/mni.hpp"

namespace banmin {

CheckReport check_peak_functional(const SpaceTag& space, const SamplingOperator& op,
                                  const Coefs& coefs, const SparseSeq& x, double tol) {
  SparseSeq nu = op.apply_Lstar(coefs);
  if (nu.empty())
    throw DegenerateInputError("check_peak_functional: combined functional vanishes");
  double dual_norm = 0.0, primal_norm = 0.0;
  switch (space.kind) {
    case SpaceTag::Kind::Hilbert:
      dual_norm = norm_lp(nu, 2.0);
      primal_norm = norm_lp(x, 2.0);
      break;
    case SpaceTag::Kind::Lp:
      dual_norm = norm_lp(nu, space.conjugate_exponent());
      primal_norm = norm_lp(x, space.p);
      break;
    case SpaceTag::Kind::L1:
      dual_norm = norm_linf(nu);
      primal_norm = norm_l1(x);
      break;
  }
  double violation = std::abs(inner(nu, x) - dual_norm * primal_norm);
  return {"peak_functional", violation <= tol, violation,
          "<L*(c), x> equals |L*(c)|_dual * |x|_space"};
}

CheckReport check_duality_infimum(const SpaceTag& space, double primal_objective,
                                  const SamplingOperator& op, const Coefs& coefs, double tol) {
  double violation;
  std::string details;
  if (space.is_l1()) {
    violation = std::abs(primal_objective * norm_linf(op.apply_Lstar(coefs)) - 1.0);
    details = "primal value times |L*(c_dual)|_inf equals 1";
  } else {
    violation = std::abs(primal_objective - infimum_report(op, coefs, space));
    details = "primal value equals |L*(c)|_dual";
  }
  return {"duality_infimum", violation <= tol, violation, details};
}

CheckReport check_support_inclusion(const SparseSeq& x, const Coefs& c,
                                    const SamplingOperator& op) {
  CheckReport report{"support_inclusion", true, 0.0,
                     "supp(x) lies inside the max index set of L*(c)"};
  if (x.empty()) return report;
  SparseSeq nu = op.apply_Lstar(c);
  if (nu.empty()) {
    report.passed = false;
    report.max_violation = norm_l1(x);
    report.details += " (L*(c) vanishes)";
    return report;
  }
  SubdiffFaceLinf face = linf_face(nu);
  for (const auto& [j, v] : x.entries()) {
    if (!face.contains(j)) {
      report.passed = false;
      report.max_violation =
          std::max(report.max_violation, 1.0 - std::abs(nu.at(j)) / face.norm_value);
    }
  }
  return report;
}

RandomInstance random_instance(Rng& rng) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    const auto n = rng.integer(3, 40);
    const auto m = rng.integer(1, std::min<std::uint64_t>(6, n));
    const double keep = 0.3 + 0.5 * rng.uniform();
    std::vector<SparseSeq> rows;
    for (std::uint64_t i = 0; i < m; ++i) {
      std::vector<SparseSeq::Entry> entries;
      for (std::uint64_t k = 0; k < n; ++k)
        if (rng.uniform() < keep) entries.emplace_back(k, rng.normal());
      if (entries.empty()) entries.emplace_back(rng.integer(0, n - 1), rng.normal());
      // Nudge the largest magnitude away from the runner-up so the max index
      // set of a single row is unambiguous.
      for (int round = 0; round < 8 && entries.size() > 1; ++round) {
        std::size_t top = 0;
        for (std::size_t k = 1; k < entries.size(); ++k)
          if (std::abs(entries[k].second) > std::abs(entries[top].second)) top = k;
        double second = 0.0;
        for (std::size_t k = 0; k < entries.size(); ++k)
          if (k != top) second = std::max(second, std::abs(entries[k].second));
        if (std::abs(entries[top].second) - second > 1e-6 * std::abs(entries[top].second)) break;
        entries[top].second *= 1.001;
      }
      rows.push_back(SparseSeq::from_pairs(std::move(entries)));
    }
    SamplingOperator op(std::move(rows));
    // keep the Gram matrix solidly invertible so the 1e-10 interpolation
    // bounds are reachable in double precision
    if (op.smallest_singular_value() <= 3e-2) continue;
    Coefs y(static_cast<Eigen::Index>(m));
    for (Eigen::Index j = 0; j < y.size(); ++j) y(j) = rng.normal();
    return {std::move(op), std::move(y)};
  }
  throw std::runtime_error("random_instance: could not draw an independent family");
}

RandomInstance random_tie_instance(Rng& rng) {
  RandomInstance inst = random_instance(rng);
  std::vector<SparseSeq> rows;
  for (const SparseSeq& row : inst.op.rows()) {
    std::vector<SparseSeq::Entry> entries(row.entries().begin(), row.entries().end());
    if (entries.size() > 1) {
      std::size_t top = 0;
      for (std::size_t k = 1; k < entries.size(); ++k)
        if (std::abs(entries[k].second) > std::abs(entries[top].second)) top = k;
      std::size_t other = (top + 1 + rng.integer(0, entries.size() - 2)) % entries.size();
      double sign = rng.uniform() < 0.5 ? 1.0 : -1.0;
      entries[other].second = sign * std::abs(entries[top].second);  // exact magnitude tie
    }
    rows.push_back(SparseSeq::from_pairs(std::move(entries)));
  }
  return {SamplingOperator(std::move(rows)), inst.y};
}

namespace {

const double kLpGrid[3] = {1.5, 3.0, 4.0};

void append(SuiteResult& out, const std::string& prefix, CheckReport r) {
  r.name = prefix + r.name;
  (r.passed ? out.passed : out.failed) += 1;
  out.reports.push_back(std::move(r));
}

void fail_with_exception(SuiteResult& out, const std::string& prefix, const std::string& name,
                         const std::exception& e) {
  CheckReport r{name, false, std::numeric_limits<double>::quiet_NaN(),
                std::string("solver failure: ") + e.what()};
  append(out, prefix, std::move(r));
}

void run_hilbert_checks(SuiteResult& out, const std::string& prefix, const RandomInstance& inst,
                        Rng& rng) {
  try {
    SolveReport h = solve_mni_hilbert(inst.op, inst.y);
    append(out, prefix,
           {"hilbert_interpolation", h.interp_residual <= 1e-10, h.interp_residual,
            "Gram-system solution interpolates the data"});

    // Null directions: project random vectors onto ker L and test <x_hat, z> = 0.
    Eigen::MatrixXd g = inst.op.gram_matrix();
    Eigen::LLT<Eigen::MatrixXd> llt(g);
    const Eigen::MatrixXd& u = inst.op.dense();
    Eigen::VectorXd xd = inst.op.restrict(h.solution);
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
      Eigen::VectorXd z(u.cols());
      for (Eigen::Index k = 0; k < z.size(); ++k) z(k) = rng.normal();
      Eigen::VectorXd znull = z - u.transpose() * llt.solve(u * z);
      double zn = znull.norm();
      if (zn <= 1e-8 * z.norm()) continue;  // trivial kernel
      worst = std::max(worst, std::abs(xd.dot(znull)) / zn);
    }
    append(out, prefix,
           {"hilbert_orthogonality", worst <= 1e-9, worst,
            "solution is orthogonal to ker L (lies in the span of the rows)"});
    if (!h.solution.empty()) {
      append(out, prefix,
             check_peak_functional(SpaceTag::hilbert(), inst.op, h.coefs, h.solution));
    }
    append(out, prefix,
           check_duality_infimum(SpaceTag::hilbert(), h.objective, inst.op, h.coefs));
  } catch (const std::exception& e) {
    fail_with_exception(out, prefix, "hilbert_solver", e);
  }
}

void run_lp_checks(SuiteResult& out, const std::string& prefix, const RandomInstance& inst,
                   double p, const IterationConfig& itcfg) {
  SpaceTag space = SpaceTag::lp(p);
  try {
    SolveReport r = solve_mni_lp_space(inst.op, inst.y, p, itcfg);
    append(out, prefix,
           {"lp_interpolation", r.interp_residual <= 1e-8, r.interp_residual,
            "duality-map solution interpolates the data"});
    double gap = std::abs(r.objective - infimum_report(inst.op, r.coefs, space));
    append(out, prefix,
           {"lp_norm_duality", gap <= 1e-8, gap, "|x|_p equals |L*(c)|_q for conjugate q"});
    if (!r.solution.empty())
      append(out, prefix, check_peak_functional(space, inst.op, r.coefs, r.solution));
  } catch (const std::exception& e) {
    fail_with_exception(out, prefix, "lp_solver", e);
  }
}

void run_l1_checks(SuiteResult& out, const std::string& prefix, const RandomInstance& inst,
                   const IterationConfig& itcfg) {
  try {
    SolveReport bp = basis_pursuit(inst.op, inst.y);
    auto [c_hat, dual_value] = dual_inf_norm_lp(inst.op, inst.y);
    double lp_product = std::abs(bp.objective * dual_value - 1.0);
    append(out, prefix,
           {"l1_lp_duality", lp_product <= 1e-8, lp_product,
            "basis-pursuit value times dual LP value equals 1"});

    SparseSeq rec = reconstruct_from_dual(inst.op, inst.y, c_hat);
    double rec_feas = (inst.op.apply_L(rec) - inst.y).lpNorm<Eigen::Infinity>();
    double rec_gap = std::abs(norm_l1(rec) - bp.objective);
    append(out, prefix,
           {"l1_reconstruction", rec_feas <= 1e-8 && rec_gap <= 1e-8,
            std::max(rec_feas, rec_gap),
            "reconstructed element is feasible with the optimal norm"});
    Membership mem =
        linf_subdiff_membership(rec, inst.op.apply_Lstar(c_hat), 1.0 / dual_value, 1e-8);
    append(out, prefix,
           {"l1_membership", mem.accepted, mem.max_violation,
            "reconstruction lies in the scaled face of the dual functional"});

    SolveReport pd = solve_mni_l1(inst.op, inst.y, itcfg);
    double obj_gap = std::abs(pd.objective - bp.objective);
    append(out, prefix,
           {"l1_solver_objective", obj_gap <= 1e-7, obj_gap,
            "iterative objective matches the basis-pursuit value"});
    double product = std::abs(pd.objective * dual_value - 1.0);
    append(out, prefix,
           {"l1_solver_duality", product <= 1e-7, product,
            "iterative objective times dual LP value equals 1"});
    double fp = pd.fixed_point_residual.value_or(std::numeric_limits<double>::quiet_NaN());
    append(out, prefix,
           {"l1_fixed_point", pd.converged && fp <= 1e-7, fp,
            "truncated fixed-point equations hold at the solution/multiplier pair"});
    append(out, prefix, check_support_inclusion(pd.solution, pd.coefs, inst.op));
    if (!pd.solution.empty())
      append(out, prefix,
             check_peak_functional(SpaceTag::l1(), inst.op, Coefs(-pd.coefs), pd.solution, 1e-7));
  } catch (const std::exception& e) {
    fail_with_exception(out, prefix, "l1_solver", e);
  }
}

}  // namespace

SuiteResult run_suite(const SuiteConfig& cfg) {
  SuiteResult out;
  for (int i = 0; i < cfg.instances; ++i) {
    Rng rng(cfg.seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(i + 1));
    RandomInstance inst = random_instance(rng);
    char prefix[16];
    std::snprintf(prefix, sizeof(prefix), "i%04d.", i);

    run_hilbert_checks(out, prefix, inst, rng);
    run_lp_checks(out, prefix, inst, kLpGrid[i % 3], cfg.iteration);
    run_l1_checks(out, prefix, inst, cfg.iteration);
  }
  return out;
}

std::string reports_to_json_lines(const std::vector<CheckReport>& reports) {
  std::string out;
  for (const CheckReport& r : reports) {
    JsonValue v = JsonValue::object();
    v.set("name", r.name);
    v.set("passed", r.passed);
    v.set("max_violation", r.max_violation);
    v.set("details", r.details);
    out += v.dump();
    out += '\n';
  }
  return out;
}

}  // namespace banmin
