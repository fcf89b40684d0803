#include "banmin/mni.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>

#include "banmin/duality.hpp"
#include "banmin/errors.hpp"
#include "banmin/prox.hpp"
#include "detail.hpp"

namespace banmin {

namespace detail {

void validate_steps(const IterationConfig& cfg, double op_norm) {
  if (cfg.step_primal > 0.0 && cfg.step_dual > 0.0 &&
      cfg.step_primal * cfg.step_dual * op_norm * op_norm >= 1.0)
    throw ParameterError(
        "IterationConfig: step_primal * step_dual * |L|^2 must stay below 1");
}

}  // namespace detail

namespace {

SolveReport zero_report(const SamplingOperator& op) {
  SolveReport r;
  r.coefs = Coefs::Zero(static_cast<Eigen::Index>(op.m()));
  r.fixed_point_residual = 0.0;
  r.converged = true;
  return r;
}

// Componentwise sign(v_j)|v_j|^{q-1} / ||v||_q^{q-2} over dense coordinates.
Eigen::VectorXd dmap_dense(const Eigen::VectorXd& v, double q) {
  double vmax = v.lpNorm<Eigen::Infinity>();
  if (vmax == 0.0) return Eigen::VectorXd::Zero(v.size());
  double s = 0.0;
  for (Eigen::Index j = 0; j < v.size(); ++j) s += std::pow(std::abs(v(j)) / vmax, q);
  double nq = vmax * std::pow(s, 1.0 / q);
  Eigen::VectorXd out(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    double mag = std::pow(std::abs(v(j)) / nq, q - 1.0) * nq;
    out(j) = v(j) > 0 ? mag : (v(j) < 0 ? -mag : 0.0);
  }
  return out;
}

// Least-norm dz with A dz = r, for the active-face refinement steps.
Eigen::VectorXd least_norm_correction(const Eigen::MatrixXd& a, const Eigen::VectorXd& r) {
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  return cod.solve(r);
}

}  // namespace

namespace detail {

// Jacobian of c -> L(dmap(L* c)): with a_j = |v_j| / ||v||_q in (0, 1] the
// map's derivative is (q-1) diag(a_j^{q-2}) + (2-q) g g^T for
// g_j = sign(v_j) a_j^{q-1}, so the Jacobian is U D U^T assembled from a
// diagonal and a rank-one piece.  a is clamped away from zero because the
// diagonal exponent is negative for q < 2 (the derivative genuinely blows
// up at vanishing coordinates).
Eigen::MatrixXd dmap_system_jacobian(const Eigen::MatrixXd& u, const Eigen::VectorXd& v,
                                     double q) {
  const Eigen::Index m = u.rows();
  const Eigen::Index n = u.cols();
  double vmax = v.lpNorm<Eigen::Infinity>();
  if (vmax == 0.0) return Eigen::MatrixXd::Zero(m, m);
  double s = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) s += std::pow(std::abs(v(j)) / vmax, q);
  double nq = vmax * std::pow(s, 1.0 / q);

  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd ug = Eigen::VectorXd::Zero(m);
  for (Eigen::Index j = 0; j < n; ++j) {
    double a = std::max(std::abs(v(j)) / nq, 1e-12);
    double diag = (q - 1.0) * std::pow(a, q - 2.0);
    jac += diag * u.col(j) * u.col(j).transpose();
    double g = std::pow(a, q - 1.0);
    ug += (v(j) >= 0 ? g : -g) * u.col(j);
  }
  jac += (2.0 - q) * ug * ug.transpose();
  return jac;
}

}  // namespace detail

SolveReport solve_mni_hilbert(const SamplingOperator& op, const Coefs& y) {
  if (static_cast<std::size_t>(y.size()) != op.m())
    throw ParameterError("solve_mni_hilbert: datum length does not match operator size");
  Eigen::MatrixXd g = op.gram_matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  if (es.eigenvalues().minCoeff() <= 1e-10)
    throw DegenerateInputError("solve_mni_hilbert: Gram matrix numerically singular");
  if (y.lpNorm<Eigen::Infinity>() == 0.0) return zero_report(op);

  Eigen::LLT<Eigen::MatrixXd> llt(g);
  Coefs c = llt.solve(y);
  c += llt.solve(y - g * c);  // one refinement step tightens the residual
  SolveReport report;
  report.solution = op.apply_Lstar(c);
  report.coefs = c;
  report.objective = std::sqrt(std::max(0.0, c.dot(g * c)));
  report.infimum_dual = report.objective;
  report.interp_residual = (op.apply_L(report.solution) - y).lpNorm<Eigen::Infinity>();
  report.support = report.solution.support();
  report.converged = true;
  return report;
}

namespace {

// For p >= 2 the primal power objective is C^1 with a locally bounded
// Hessian, while the coefficient system carries a fractional exponent that
// blows up at vanishing coordinates.  So iterate a feasible-start
// equality-constrained Newton method on (1/p) sum |x_j|^p over {L x = y}
// and read the coefficients off the multiplier; convergence is still
// declared on the coefficient-system residual F(c).
SolveReport solve_mni_lp_primal(const SamplingOperator& op, const Coefs& y, double p,
                                const IterationConfig& cfg) {
  const double q = p / (p - 1.0);
  const Eigen::MatrixXd& u = op.dense();
  const Eigen::Index m = u.rows();
  const Eigen::Index n = u.cols();

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod_u(u);
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod_ut(
      Eigen::MatrixXd(u.transpose()));

  auto fval = [&](const Eigen::VectorXd& x) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) s += std::pow(std::abs(x(j)), p) / p;
    return s;
  };
  auto grad = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd g(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      double mag = std::pow(std::abs(x(j)), p - 1.0);
      g(j) = x(j) > 0 ? mag : (x(j) < 0 ? -mag : 0.0);
    }
    return g;
  };
  auto coefs_from = [&](const Eigen::VectorXd& x) -> Coefs {
    Eigen::VectorXd lam = cod_ut.solve(grad(x));
    double np = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) np += std::pow(std::abs(x(j)), p);
    np = std::pow(np, 1.0 / p);
    return lam * std::pow(np, 2.0 - p);
  };
  auto dual_residual = [&](const Coefs& c) {
    return (u * dmap_dense(u.transpose() * c, q) - y).lpNorm<Eigen::Infinity>();
  };

  Eigen::VectorXd x = cod_u.solve(y);  // least-squares-norm interpolant
  double best_res = std::numeric_limits<double>::infinity();
  Coefs best_c;
  double f_prev = fval(x);
  int flat = 0;
  long iter = 0;
  const long cap = std::min<long>(cfg.max_iter, 2000);
  for (; iter < cap; ++iter) {
    Coefs c = coefs_from(x);
    double res = dual_residual(c);
    if (res < best_res) {
      best_res = res;
      best_c = c;
    }
    if (res <= cfg.tol) break;

    Eigen::VectorXd g = grad(x);
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n + m, n + m);
    for (Eigen::Index j = 0; j < n; ++j)
      kkt(j, j) = (p - 1.0) * std::pow(std::abs(x(j)), p - 2.0);
    kkt.block(0, n, n, m) = u.transpose();
    kkt.block(n, 0, m, n) = u;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + m);
    rhs.head(n) = -g;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> kkt_cod(kkt);
    Eigen::VectorXd dx = kkt_cod.solve(rhs).head(n);
    dx -= cod_u.solve(u * dx);  // keep the step exactly feasible
    if (!dx.allFinite() || g.dot(dx) >= 0.0) {
      dx = -(g - cod_u.solve(u * g));  // projected steepest descent
    }

    // full steps that shrink the certification residual bypass the line
    // search (the objective decrease is below float resolution there)
    bool accepted = false;
    if (dual_residual(coefs_from(x + dx)) <= 0.9 * res) {
      x += dx;
      accepted = true;
    }
    for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
      double slope = g.dot(dx);
      if (slope < 0.0) {
        double alpha = 1.0;
        double f0 = fval(x);
        for (int halvings = 0; halvings < 60; ++halvings) {
          if (fval(x + alpha * dx) <= f0 + 1e-4 * alpha * slope) {
            x += alpha * dx;
            accepted = true;
            break;
          }
          alpha *= 0.5;
        }
      }
      if (!accepted) dx = -(g - cod_u.solve(u * g));
    }
    if (!accepted) break;

    double f = fval(x);
    if (f_prev - f <= 1e-17 * (1.0 + std::abs(f))) {
      if (++flat > 40) break;
    } else {
      flat = 0;
    }
    f_prev = f;
  }

  if (best_res > cfg.tol)
    throw NonConvergenceError("solve_mni_lp_space: primal Newton iteration stagnated", best_res);

  SolveReport report;
  report.coefs = best_c;
  report.solution = dmap_lq(op.apply_Lstar(best_c), q);
  report.objective = norm_lp(report.solution, p);
  report.infimum_dual = norm_lp(op.apply_Lstar(best_c), q);
  report.interp_residual = (op.apply_L(report.solution) - y).lpNorm<Eigen::Infinity>();
  report.support = report.solution.support();
  report.iterations = iter;
  report.converged = true;
  return report;
}

}  // namespace

SolveReport solve_mni_lp_space(const SamplingOperator& op, const Coefs& y, double p,
                               const IterationConfig& cfg) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw ParameterError("solve_mni_lp_space: exponent p must lie in (1, inf)");
  if (static_cast<std::size_t>(y.size()) != op.m())
    throw ParameterError("solve_mni_lp_space: datum length does not match operator size");
  const double q = p / (p - 1.0);
  if (y.lpNorm<Eigen::Infinity>() == 0.0) return zero_report(op);
  if (p >= 2.0) return solve_mni_lp_primal(op, y, p, cfg);

  const Eigen::MatrixXd& u = op.dense();
  const Eigen::Index m = u.rows();

  // F(c) = L(dmap(L* c)) - y is the gradient of the smooth convex function
  // phi(c) = 1/2 ||L* c||_q^2 - <y, c>, so Armijo backtracking on phi along
  // (damped) Newton directions converges globally.
  auto residual = [&](const Coefs& c) -> Coefs { return u * dmap_dense(u.transpose() * c, q) - y; };
  auto objective = [&](const Coefs& c) -> double {
    Eigen::VectorXd v = u.transpose() * c;
    double vmax = v.lpNorm<Eigen::Infinity>();
    if (vmax == 0.0) return -y.dot(c);
    double s = 0.0;
    for (Eigen::Index j = 0; j < v.size(); ++j) s += std::pow(std::abs(v(j)) / vmax, q);
    double nq = vmax * std::pow(s, 1.0 / q);
    return 0.5 * nq * nq - y.dot(c);
  };

  // Initialize from the Hilbert surrogate (ridge-protected).
  Eigen::MatrixXd g = u * u.transpose();
  Coefs c = (g + 1e-12 * Eigen::MatrixXd::Identity(m, m)).ldlt().solve(y);

  double best_res = std::numeric_limits<double>::infinity();
  Coefs best_c = c;
  double phi_prev = objective(c);
  int flat = 0;
  long iter = 0;
  for (; iter < cfg.max_iter; ++iter) {
    Coefs fc = residual(c);
    double res = fc.lpNorm<Eigen::Infinity>();
    if (res < best_res) {
      best_res = res;
      best_c = c;
    }
    if (res <= cfg.tol) break;

    Eigen::MatrixXd jac = detail::dmap_system_jacobian(u, u.transpose() * c, q);
    Eigen::VectorXd step = -least_norm_correction(jac, fc);
    if (!step.allFinite() || fc.dot(step) >= 0.0) step = -fc;  // fall back to steepest descent

    // A full step that shrinks the residual is always taken; near the
    // optimum the potential's decrease falls below double resolution while
    // the residual stays measurable.
    bool accepted = false;
    if (residual(c + step).lpNorm<Eigen::Infinity>() <= 0.9 * res) {
      c += step;
      accepted = true;
    }

    // Otherwise Armijo on the convex potential, retrying along the gradient
    // if the Newton direction makes no progress at any step length.
    double phi0 = objective(c);
    for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
      double slope = fc.dot(step);
      double alpha = 1.0;
      for (int halvings = 0; halvings < 60; ++halvings) {
        if (objective(c + alpha * step) <= phi0 + 1e-4 * alpha * slope) {
          c += alpha * step;
          accepted = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!accepted) step = -fc;
    }
    if (!accepted) break;

    double phi = objective(c);
    if (phi_prev - phi <= 1e-17 * (1.0 + std::abs(phi))) {
      if (++flat > 40) break;
    } else {
      flat = 0;
    }
    phi_prev = phi;
  }

  Coefs f_final = residual(c);
  if (f_final.lpNorm<Eigen::Infinity>() > best_res) c = best_c;
  if (residual(c).lpNorm<Eigen::Infinity>() > cfg.tol)
    throw NonConvergenceError("solve_mni_lp_space: Newton iteration stagnated",
                              std::min(best_res, residual(c).lpNorm<Eigen::Infinity>()));

  SolveReport report;
  report.solution = dmap_lq(op.apply_Lstar(c), q);
  report.coefs = c;
  report.objective = norm_lp(report.solution, p);
  report.infimum_dual = norm_lp(op.apply_Lstar(c), q);
  report.interp_residual = (op.apply_L(report.solution) - y).lpNorm<Eigen::Infinity>();
  report.support = report.solution.support();
  report.iterations = iter;
  report.converged = true;
  return report;
}

SolveReport solve_mni_l1(const SamplingOperator& op, const Coefs& y, const IterationConfig& cfg) {
  if (static_cast<std::size_t>(y.size()) != op.m())
    throw ParameterError("solve_mni_l1: datum length does not match operator size");
  if (y.lpNorm<Eigen::Infinity>() == 0.0) return zero_report(op);

  const Eigen::MatrixXd& u = op.dense();
  const Eigen::Index m = u.rows();
  const Eigen::Index n = u.cols();

  const double lnorm = op.operator_norm();
  SolveReport report;
  if (lnorm == 0.0) {  // all functionals vanish but y != 0: nothing to iterate on
    report = zero_report(op);
    report.interp_residual = y.lpNorm<Eigen::Infinity>();
    report.fixed_point_residual = report.interp_residual;
    report.converged = false;
    return report;
  }
  detail::validate_steps(cfg, lnorm);
  double tau = cfg.step_primal > 0.0 ? cfg.step_primal : std::sqrt(0.95) / lnorm;
  double sigma = cfg.step_dual > 0.0 ? cfg.step_dual : std::sqrt(0.95) / lnorm;
  double theta = std::clamp(cfg.relaxation, 0.0, 1.0);

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd xbar = x;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(m);

  auto residuals = [&](const Eigen::VectorXd& xd,
                       const Eigen::VectorXd& wd) -> std::pair<double, double> {
    return fixed_point_residual_l1(op, y, op.lift(xd), wd);
  };

  double best_res = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_x = x, best_w = w;
  bool converged = false;
  long iter = 0;
  const long poll = 25;

  for (iter = 1; iter <= cfg.max_iter; ++iter) {
    w += sigma * (u * xbar - y);
    Eigen::VectorXd xnew = x - tau * (u.transpose() * w);
    for (Eigen::Index j = 0; j < n; ++j) xnew(j) = soft_threshold(xnew(j), tau);
    xbar = xnew + theta * (xnew - x);
    x = xnew;

    if (iter % poll != 0 && iter != cfg.max_iter) continue;
    auto [r1, r2] = residuals(x, w);
    double r = std::max(r1, r2);
    if (r < best_res) {
      best_res = r;
      best_x = x;
      best_w = w;
    }
    if (r <= cfg.tol) {
      converged = true;
      break;
    }

    // Once the soft-threshold support has settled, snap the pair onto the
    // active face: re-solve interpolation on the support and re-fit the
    // multiplier so the support coordinates of L*(w) sit exactly at -sign.
    if (r <= 1e-4) {
      std::vector<Eigen::Index> live;
      for (Eigen::Index j = 0; j < n; ++j)
        if (x(j) != 0.0) live.push_back(j);
      if (!live.empty()) {
        const Eigen::Index f = static_cast<Eigen::Index>(live.size());
        Eigen::MatrixXd uj(m, f);
        Eigen::VectorXd xj(f), sj(f);
        for (Eigen::Index k = 0; k < f; ++k) {
          uj.col(k) = u.col(live[static_cast<std::size_t>(k)]);
          xj(k) = x(live[static_cast<std::size_t>(k)]);
          sj(k) = xj(k) > 0 ? 1.0 : -1.0;
        }
        Eigen::VectorXd xj_fix = xj + least_norm_correction(uj, y - uj * xj);
        Eigen::VectorXd w_fix =
            w + least_norm_correction(Eigen::MatrixXd(uj.transpose()), -sj - uj.transpose() * w);
        Eigen::VectorXd x_fix = Eigen::VectorXd::Zero(n);
        for (Eigen::Index k = 0; k < f; ++k) x_fix(live[static_cast<std::size_t>(k)]) = xj_fix(k);
        auto [p1, p2] = residuals(x_fix, w_fix);
        if (std::max(p1, p2) <= cfg.tol) {
          x = x_fix;
          w = w_fix;
          converged = true;
          best_res = std::max(p1, p2);
          best_x = x;
          best_w = w;
          break;
        }
      }
    }
  }

  if (!converged) {
    x = best_x;
    w = best_w;
  }

  report.solution = op.lift(x);
  report.coefs = w;
  report.objective = norm_l1(report.solution);
  auto [r1, r2] = fixed_point_residual_l1(op, y, report.solution, w);
  report.interp_residual = r1;
  report.fixed_point_residual = std::max(r1, r2);
  SparseSeq lw = op.apply_Lstar(w);
  double dual_norm = norm_linf(lw);
  report.infimum_dual = dual_norm > 0.0 ? report.objective / dual_norm : report.objective;
  report.support = report.solution.support();
  report.iterations = iter > cfg.max_iter ? cfg.max_iter : iter;
  report.converged = converged;
  return report;
}

std::pair<double, double> fixed_point_residual_l1(const SamplingOperator& op, const Coefs& y,
                                                  const SparseSeq& x, const Coefs& c) {
  Coefs shifted = prox_indicator_conj(c + op.apply_L(x), y, 1.0);
  double r_interp = (shifted - c).lpNorm<Eigen::Infinity>();

  SparseSeq slc = truncate_S(op.apply_Lstar(c));
  SparseSeq arg = combine(1.0, x, -1.0, slc);
  SparseSeq prox = soft_threshold(arg, 1.0);
  double r_prox = norm_l1(combine(1.0, x, -1.0, prox));
  return {r_interp, r_prox};
}

double infimum_report(const SamplingOperator& op, const Coefs& coefs, const SpaceTag& space) {
  switch (space.kind) {
    case SpaceTag::Kind::Hilbert: {
      Eigen::MatrixXd g = op.gram_matrix();
      return std::sqrt(std::max(0.0, coefs.dot(g * coefs)));
    }
    case SpaceTag::Kind::Lp:
      return norm_lp(op.apply_Lstar(coefs), space.conjugate_exponent());
    case SpaceTag::Kind::L1: {
      double d = norm_linf(op.apply_Lstar(coefs));
      if (d == 0.0)
        throw DegenerateInputError("infimum_report: dual functional vanishes, no reciprocal");
      return 1.0 / d;
    }
  }
  return 0.0;
}

}  // namespace banmin
