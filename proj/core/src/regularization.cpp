#include "banmin/regularization.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "banmin/duality.hpp"
#include "banmin/errors.hpp"
#include "detail.hpp"

namespace banmin {

namespace {

Eigen::VectorXd least_norm_correction(const Eigen::MatrixXd& a, const Eigen::VectorXd& r) {
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  return cod.solve(r);
}

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

// Sample classification against the loss subdifferential, used to snap a
// nearly-converged multiplier onto the exact optimality structure.  Samples
// whose multiplier sits strictly inside a subgradient interval pin the
// forward value z_k to the kink location.
struct SampleFace {
  std::vector<Eigen::Index> kink;     // samples constrained to z_k = kink_target
  Eigen::VectorXd kink_target;        // parallel to kink
  Eigen::VectorXd fixed_multiplier;   // full length; meaningful off the kink set
};

SampleFace classify_samples(const LossSpec& loss, const Eigen::VectorXd& w, double delta) {
  const Eigen::Index m = w.size();
  SampleFace face;
  face.fixed_multiplier = Eigen::VectorXd::Zero(m);
  std::vector<double> targets;
  for (Eigen::Index j = 0; j < m; ++j) {
    switch (loss.kind) {
      case LossSpec::Kind::Hinge: {
        double t = -w(j) * loss.y(j);  // ideal range [0, 1]
        if (t <= delta) {
          face.fixed_multiplier(j) = 0.0;
        } else if (t >= 1.0 - delta) {
          face.fixed_multiplier(j) = -loss.y(j);
        } else {
          face.kink.push_back(j);
          targets.push_back(loss.y(j));
        }
        break;
      }
      case LossSpec::Kind::EpsInsensitive: {
        double t = w(j);  // ideal range [-1, 1]
        if (std::abs(t) <= delta) {
          face.fixed_multiplier(j) = 0.0;
        } else if (t >= 1.0 - delta) {
          face.fixed_multiplier(j) = 1.0;
        } else if (t <= -1.0 + delta) {
          face.fixed_multiplier(j) = -1.0;
        } else {
          face.kink.push_back(j);
          targets.push_back(loss.y(j) + (t > 0 ? loss.eps : -loss.eps));
        }
        break;
      }
      case LossSpec::Kind::Square:
        face.fixed_multiplier(j) = w(j);
        break;
    }
  }
  face.kink_target = Eigen::Map<Eigen::VectorXd>(targets.data(), static_cast<Eigen::Index>(targets.size()));
  return face;
}

// derivative of h(t) = phi'(t) / t
double penalty_h_prime(const Regularizer& reg, double t) {
  switch (reg.kind) {
    case Regularizer::Kind::Identity: return -1.0 / (t * t);
    case Regularizer::Kind::Square: return 0.0;
    case Regularizer::Kind::Power: return reg.r * (reg.r - 2.0) * std::pow(t, reg.r - 3.0);
  }
  return 0.0;
}

}  // namespace

Regularizer Regularizer::power(double r) {
  if (!(r > 0.0)) throw ParameterError("Regularizer::power: exponent must be positive");
  return {Kind::Power, r};
}

double Regularizer::value(double t) const {
  switch (kind) {
    case Kind::Identity: return t;
    case Kind::Square: return t * t;
    case Kind::Power: return std::pow(t, r);
  }
  return 0.0;
}

double Regularizer::derivative_over_t(double t) const {
  switch (kind) {
    case Kind::Identity: return 1.0 / t;
    case Kind::Square: return 2.0;
    case Kind::Power: return r * std::pow(t, r - 2.0);
  }
  return 0.0;
}

RegProblem::RegProblem(SamplingOperator op_in, SpaceTag space_in, LossSpec loss_in,
                       Regularizer regularizer_in, double lambda_in)
    : op(std::move(op_in)),
      space(space_in),
      loss(std::move(loss_in)),
      regularizer(regularizer_in),
      lambda(lambda_in) {
  if (!(lambda > 0.0)) throw ParameterError("RegProblem: lambda must be positive");
  if (static_cast<std::size_t>(loss.y.size()) != op.m())
    throw ParameterError("RegProblem: loss data length does not match operator size");
}

SolveReport solve_reg_hilbert_square(const SamplingOperator& op, const Coefs& y, double lambda) {
  if (!(lambda > 0.0)) throw ParameterError("solve_reg_hilbert_square: lambda must be positive");
  if (static_cast<std::size_t>(y.size()) != op.m())
    throw ParameterError("solve_reg_hilbert_square: datum length does not match operator size");
  const Eigen::Index m = static_cast<Eigen::Index>(op.m());
  Eigen::MatrixXd g = op.gram_matrix();
  Coefs c = (g + lambda * Eigen::MatrixXd::Identity(m, m)).llt().solve(y);

  SolveReport report;
  report.solution = op.apply_Lstar(c);
  report.coefs = c;
  Coefs gc = g * c;
  report.objective = (gc - y).squaredNorm() + lambda * c.dot(gc);
  report.infimum_dual = std::sqrt(std::max(0.0, c.dot(gc)));
  report.interp_residual = (op.apply_L(report.solution) - y).lpNorm<Eigen::Infinity>();
  report.support = report.solution.support();
  report.converged = true;
  return report;
}

SolveReport solve_reg_hilbert_prox(const RegProblem& problem, const IterationConfig& cfg) {
  if (!problem.space.is_hilbert())
    throw ParameterError("solve_reg_hilbert_prox: problem space must be Hilbert");
  if (problem.regularizer.kind != Regularizer::Kind::Square)
    throw ParameterError("solve_reg_hilbert_prox: penalty must be the squared norm");
  const SamplingOperator& op = problem.op;
  const LossSpec& loss = problem.loss;
  const double lambda = problem.lambda;
  const Eigen::Index m = static_cast<Eigen::Index>(op.m());

  Eigen::MatrixXd g = op.gram_matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  double gnorm = std::max(es.eigenvalues().maxCoeff(), 1e-30);

  // Iterate in the symmetric-root coordinates d = G^{1/2} c, where the
  // quadratic penalty becomes lambda |d|^2: the primal prox is a plain
  // shrink and only sqrt(cond(G)) enters the convergence rate.
  Eigen::VectorXd root(m), inv_root(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    double lam_i = es.eigenvalues()(i);
    if (lam_i > 1e-14 * gnorm) {
      root(i) = std::sqrt(lam_i);
      inv_root(i) = 1.0 / root(i);
    } else {
      root(i) = 0.0;
      inv_root(i) = 0.0;
    }
  }
  Eigen::MatrixXd k_half =
      es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
  Eigen::MatrixXd k_half_pinv =
      es.eigenvectors() * inv_root.asDiagonal() * es.eigenvectors().transpose();

  double knorm = std::max(std::sqrt(gnorm), 1e-15);
  detail::validate_steps(cfg, knorm);
  const double tau0 = cfg.step_primal > 0.0 ? cfg.step_primal : std::sqrt(0.95) / knorm;
  const double sigma0 = cfg.step_dual > 0.0 ? cfg.step_dual : std::sqrt(0.95) / knorm;
  double tau = tau0, sigma = sigma0;
  const double gamma = 2.0 * lambda;  // strong convexity of the shrunk penalty

  // Residual of c = -(1/2 lambda) prox_{Q*}((G - 2 lambda I) c) at unit scale.
  auto fp_residual = [&](const Coefs& c) -> double {
    Coefs t = prox_loss_conj(g * c - 2.0 * lambda * c, loss, 1.0) / (-2.0 * lambda);
    return (c - t).lpNorm<Eigen::Infinity>();
  };

  Coefs c = Coefs::Zero(m);
  Eigen::VectorXd d = Coefs::Zero(m), dbar = d, w = Coefs::Zero(m);
  double best_res = std::numeric_limits<double>::infinity();
  Coefs best_c = c;
  bool converged = false;
  long iter = 0;
  const long poll = 25;
  for (iter = 1; iter <= cfg.max_iter; ++iter) {
    w = prox_loss_conj(w + sigma * (k_half * dbar), loss, sigma);
    Eigen::VectorXd dnew = (d - tau * (k_half * w)) / (1.0 + 2.0 * tau * lambda);
    double theta = 1.0 / std::sqrt(1.0 + 2.0 * gamma * tau);
    tau *= theta;
    sigma /= theta;
    // restart the schedule before sigma amplifies prox roundoff
    if (sigma > 1e3 * sigma0) {
      tau = tau0;
      sigma = sigma0;
    }
    dbar = dnew + theta * (dnew - d);
    d = dnew;

    if (iter % poll != 0 && iter != cfg.max_iter) continue;
    c = k_half_pinv * d;
    double r = fp_residual(c);
    if (r < best_res) {
      best_res = r;
      best_c = c;
    }
    if (r <= cfg.tol) {
      converged = true;
      break;
    }
    // For the piecewise-linear losses, samples at a loss kink force
    // (G c)_k onto the kink exactly; refine once classification is stable.
    if (r <= 1e-4 && loss.kind != LossSpec::Kind::Square) {
      SampleFace face = classify_samples(loss, -2.0 * lambda * c, 1e-4);
      Coefs c_fix = -face.fixed_multiplier / (2.0 * lambda);
      const Eigen::Index nk = static_cast<Eigen::Index>(face.kink.size());
      if (nk > 0) {
        Eigen::MatrixXd gk(nk, m);
        for (Eigen::Index k = 0; k < nk; ++k) gk.row(k) = g.row(face.kink[static_cast<std::size_t>(k)]);
        // unknowns: c on the kink set; everything else pinned by the multiplier
        Eigen::MatrixXd gkk(nk, nk);
        Eigen::VectorXd rhs = face.kink_target;
        Coefs c_off = c_fix;
        for (Eigen::Index k = 0; k < nk; ++k) c_off(face.kink[static_cast<std::size_t>(k)]) = 0.0;
        rhs -= gk * c_off;
        for (Eigen::Index k = 0; k < nk; ++k)
          for (Eigen::Index l = 0; l < nk; ++l)
            gkk(k, l) = gk(k, face.kink[static_cast<std::size_t>(l)]);
        Eigen::VectorXd ck = least_norm_correction(gkk, rhs);
        for (Eigen::Index k = 0; k < nk; ++k) c_fix(face.kink[static_cast<std::size_t>(k)]) = ck(k);
      }
      double rp = fp_residual(c_fix);
      if (rp <= cfg.tol) {
        c = c_fix;
        best_res = rp;
        best_c = c;
        converged = true;
        break;
      }
    }
  }
  if (!converged) c = best_c;

  SolveReport report;
  report.solution = op.apply_Lstar(c);
  report.coefs = c;
  Coefs gc = g * c;
  report.objective = loss.value(gc) + lambda * std::max(0.0, c.dot(gc));
  report.infimum_dual = std::sqrt(std::max(0.0, c.dot(gc)));
  report.interp_residual = (op.apply_L(report.solution) - loss.y).lpNorm<Eigen::Infinity>();
  report.fixed_point_residual = fp_residual(c);
  report.support = report.solution.support();
  report.iterations = std::min(iter, cfg.max_iter);
  report.converged = converged;
  return report;
}

SolveReport solve_reg_lp_space(const RegProblem& problem, const IterationConfig& cfg) {
  if (!problem.space.is_lp())
    throw ParameterError("solve_reg_lp_space: problem space must be Lp");
  if (!problem.loss.differentiable())
    throw ParameterError("solve_reg_lp_space: loss must be differentiable for the Newton route");
  const double p = problem.space.p;
  const double q = problem.space.conjugate_exponent();
  const SamplingOperator& op = problem.op;
  const LossSpec& loss = problem.loss;
  const double lambda = problem.lambda;
  const Eigen::MatrixXd& u = op.dense();
  const Eigen::Index m = u.rows();

  SolveReport report;
  if (loss.y.lpNorm<Eigen::Infinity>() == 0.0) {
    report.coefs = Coefs::Zero(m);
    report.fixed_point_residual = 0.0;
    report.converged = true;
    return report;
  }

  auto gsip = [&](const Coefs& c) -> Coefs { return u * dmap_dense(u.transpose() * c, q); };
  auto system = [&](const Coefs& c) -> Coefs {
    Coefs gz = gsip(c);
    Coefs r = loss.gradient(gz);
    double n2 = c.dot(gz);
    if (n2 > 0.0) r += lambda * problem.regularizer.derivative_over_t(std::sqrt(n2)) * c;
    return r;
  };

  Eigen::MatrixXd g = u * u.transpose();
  Coefs c0 = (g + lambda * Eigen::MatrixXd::Identity(m, m)).ldlt().solve(loss.y);

  double best_res = std::numeric_limits<double>::infinity();
  Coefs best_c = c0;
  long total_iters = 0;
  const double restart_scales[] = {1.0, 0.5, 2.0, 0.25, 4.0, 0.1};
  for (double scale : restart_scales) {
    Coefs c = scale * c0;
    int stagnant = 0;
    for (long iter = 0; iter < 400 && total_iters < cfg.max_iter; ++iter, ++total_iters) {
      Coefs rc = system(c);
      double res = rc.lpNorm<Eigen::Infinity>();
      if (res < best_res) {
        best_res = res;
        best_c = c;
        stagnant = 0;
      } else if (++stagnant > 30) {
        break;
      }
      if (res <= cfg.tol) break;

      // analytic Jacobian: loss curvature through the nonlinear Gram map
      // plus the derivative of the penalty factor h(n) = phi'(n)/n
      Eigen::MatrixXd jac =
          2.0 * detail::dmap_system_jacobian(u, u.transpose() * c, q);
      Coefs gz = gsip(c);
      double n2 = c.dot(gz);
      if (n2 > 0.0) {
        double nrm = std::sqrt(n2);
        jac += lambda * problem.regularizer.derivative_over_t(nrm) *
               Eigen::MatrixXd::Identity(m, m);
        jac += (lambda * penalty_h_prime(problem.regularizer, nrm) / nrm) * c * gz.transpose();
      }
      Eigen::VectorXd step = -least_norm_correction(jac, rc);
      if (!step.allFinite()) step = -rc;

      double alpha = 1.0;
      bool accepted = false;
      for (int halvings = 0; halvings < 60; ++halvings) {
        if (system(c + alpha * step).lpNorm<Eigen::Infinity>() <= (1.0 - 1e-4 * alpha) * res) {
          accepted = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!accepted) break;
      c += alpha * step;
    }
    if (best_res <= cfg.tol) break;
  }

  if (best_res > cfg.tol)
    throw NonConvergenceError("solve_reg_lp_space: Newton iteration stagnated", best_res);

  const Coefs& c = best_c;
  report.solution = dmap_lq(op.apply_Lstar(c), q);
  report.coefs = c;
  double norm_p = norm_lp(report.solution, p);
  Coefs lz = op.apply_L(report.solution);
  report.objective = loss.value(lz) + lambda * problem.regularizer.value(norm_p);
  report.infimum_dual = norm_lp(op.apply_Lstar(c), q);
  report.interp_residual = (lz - loss.y).lpNorm<Eigen::Infinity>();
  report.fixed_point_residual = best_res;
  report.support = report.solution.support();
  report.iterations = total_iters;
  report.converged = true;
  return report;
}

SolveReport solve_reg_l1(const RegProblem& problem, const IterationConfig& cfg) {
  if (!problem.space.is_l1())
    throw ParameterError("solve_reg_l1: problem space must be L1");
  if (problem.regularizer.kind != Regularizer::Kind::Identity)
    throw ParameterError("solve_reg_l1: penalty must be lambda * ||x||_1 (identity regularizer)");
  const SamplingOperator& op = problem.op;
  const LossSpec& loss = problem.loss;
  const double lambda = problem.lambda;
  const Eigen::MatrixXd& u = op.dense();
  const Eigen::Index m = u.rows();
  const Eigen::Index n = u.cols();

  const double unorm = op.operator_norm();

  auto residuals = [&](const Eigen::VectorXd& xd,
                       const Eigen::VectorXd& wd) -> std::pair<double, double> {
    return reg_fixed_point_residual_l1(problem, op.lift(xd), wd);
  };

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd w = loss.kind == LossSpec::Kind::Square ? Eigen::VectorXd(loss.gradient(u * x))
                                                          : Eigen::VectorXd::Zero(m);
  double best_res = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_x = x, best_w = w;
  bool converged = false;
  long iter = 0;
  const long poll = 25;

  // Attempt to land exactly on the optimal face: re-solve the stationarity
  // or kink equations on the current support and accept on certification.
  auto try_polish = [&](const Eigen::VectorXd& xc, const Eigen::VectorXd& wc) -> bool {
    std::vector<Eigen::Index> live;
    for (Eigen::Index j = 0; j < n; ++j)
      if (xc(j) != 0.0) live.push_back(j);
    const Eigen::Index f = static_cast<Eigen::Index>(live.size());
    Eigen::MatrixXd uj(m, f);
    Eigen::VectorXd xj(f), sj(f);
    for (Eigen::Index k = 0; k < f; ++k) {
      uj.col(k) = u.col(live[static_cast<std::size_t>(k)]);
      xj(k) = xc(live[static_cast<std::size_t>(k)]);
      sj(k) = xj(k) > 0 ? 1.0 : -1.0;
    }
    Eigen::VectorXd x_fix = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd w_fix = wc;
    if (loss.kind == LossSpec::Kind::Square) {
      if (f > 0) {
        // stationarity on the support: 2 Uj^T (Uj xj - y) + lambda s = 0
        Eigen::MatrixXd a = 2.0 * uj.transpose() * uj;
        Eigen::VectorXd b = 2.0 * uj.transpose() * loss.y - lambda * sj;
        Eigen::VectorXd xj_fix = xj + least_norm_correction(a, b - a * xj);
        for (Eigen::Index k = 0; k < f; ++k) x_fix(live[static_cast<std::size_t>(k)]) = xj_fix(k);
      }
      w_fix = loss.gradient(u * x_fix);
    } else {
      SampleFace face = classify_samples(loss, wc, 1e-4);
      const Eigen::Index nk = static_cast<Eigen::Index>(face.kink.size());
      w_fix = face.fixed_multiplier;
      if (f > 0) {
        if (nk > 0) {
          // multiplier on the kink samples from Uj^T w = -lambda s
          // (w_fix currently holds the pinned off-kink values, zeros on kinks)
          Eigen::MatrixXd b1(f, nk);
          Eigen::VectorXd wk(nk);
          for (Eigen::Index k = 0; k < nk; ++k) {
            b1.col(k) = uj.row(face.kink[static_cast<std::size_t>(k)]).transpose();
            wk(k) = wc(face.kink[static_cast<std::size_t>(k)]);
          }
          Eigen::VectorXd rhs1 = -lambda * sj - uj.transpose() * w_fix;
          wk += least_norm_correction(b1, rhs1 - b1 * wk);
          for (Eigen::Index k = 0; k < nk; ++k)
            w_fix(face.kink[static_cast<std::size_t>(k)]) = wk(k);
        }
        // forward values pinned to the kinks: (U x)_k = target_k
        if (nk > 0) {
          Eigen::MatrixXd b2(nk, f);
          for (Eigen::Index k = 0; k < nk; ++k)
            b2.row(k) = uj.row(face.kink[static_cast<std::size_t>(k)]);
          Eigen::VectorXd xj_fix = xj + least_norm_correction(b2, face.kink_target - b2 * xj);
          for (Eigen::Index k = 0; k < f; ++k)
            x_fix(live[static_cast<std::size_t>(k)]) = xj_fix(k);
        } else {
          for (Eigen::Index k = 0; k < f; ++k)
            x_fix(live[static_cast<std::size_t>(k)]) = xj(k);
        }
      }
    }
    auto [p1, p2] = residuals(x_fix, w_fix);
    if (std::max(p1, p2) <= cfg.tol) {
      x = x_fix;
      w = w_fix;
      best_res = std::max(p1, p2);
      best_x = x;
      best_w = w;
      return true;
    }
    return false;
  };

  if (loss.kind == LossSpec::Kind::Square) {
    // Accelerated proximal-gradient iteration with step 0.95 / L.
    const double lips = std::max(2.0 * unorm * unorm, 1e-30);
    const double step = 0.95 / lips;
    Eigen::VectorXd v = x, x_prev = x;
    double t_momentum = 1.0;
    for (iter = 1; iter <= cfg.max_iter; ++iter) {
      Eigen::VectorXd grad = 2.0 * (u.transpose() * (u * v - loss.y));
      Eigen::VectorXd xnew = v - step * grad;
      for (Eigen::Index j = 0; j < n; ++j) xnew(j) = soft_threshold(xnew(j), step * lambda);
      double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_momentum * t_momentum));
      v = xnew + ((t_momentum - 1.0) / t_next) * (xnew - x_prev);
      t_momentum = t_next;
      x_prev = xnew;
      x = xnew;

      if (iter % poll != 0 && iter != cfg.max_iter) continue;
      w = loss.gradient(u * x);
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
      if (r <= 1e-4 && try_polish(x, w)) {
        converged = true;
        break;
      }
    }
  } else {
    // Primal-dual iteration with the conjugate-loss prox.
    const double lnorm = std::max(unorm, 1e-30);
    detail::validate_steps(cfg, lnorm);
    double tau = cfg.step_primal > 0.0 ? cfg.step_primal : std::sqrt(0.95) / lnorm;
    double sigma = cfg.step_dual > 0.0 ? cfg.step_dual : std::sqrt(0.95) / lnorm;
    double theta = std::clamp(cfg.relaxation, 0.0, 1.0);
    Eigen::VectorXd xbar = x;
    for (iter = 1; iter <= cfg.max_iter; ++iter) {
      w = prox_loss_conj(w + sigma * (u * xbar), loss, sigma);
      Eigen::VectorXd xnew = x - tau * (u.transpose() * w);
      for (Eigen::Index j = 0; j < n; ++j) xnew(j) = soft_threshold(xnew(j), tau * lambda);
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
      if (r <= 1e-4 && try_polish(x, w)) {
        converged = true;
        break;
      }
    }
  }

  if (!converged) {
    x = best_x;
    w = best_w;
  }

  SolveReport report;
  report.solution = op.lift(x);
  report.coefs = w;
  Coefs lz = op.apply_L(report.solution);
  report.objective = loss.value(lz) + lambda * norm_l1(report.solution);
  auto [r1, r2] = reg_fixed_point_residual_l1(problem, report.solution, w);
  report.interp_residual = (lz - loss.y).lpNorm<Eigen::Infinity>();
  report.fixed_point_residual = std::max(r1, r2);
  report.infimum_dual = norm_l1(report.solution);
  report.support = report.solution.support();
  report.iterations = std::min(iter, cfg.max_iter);
  report.converged = converged;
  return report;
}

std::pair<double, double> reg_fixed_point_residual_l1(const RegProblem& problem,
                                                      const SparseSeq& x, const Coefs& c) {
  const SamplingOperator& op = problem.op;
  Coefs shifted = prox_loss_conj(c + op.apply_L(x), problem.loss, 1.0);
  double r_dual = (shifted - c).lpNorm<Eigen::Infinity>();

  SparseSeq slc = truncate_S(op.apply_Lstar(c));
  SparseSeq arg = combine(1.0, x, -1.0 / problem.lambda, slc);
  SparseSeq prox = soft_threshold(arg, 1.0);
  double r_prox = norm_l1(combine(1.0, x, -1.0, prox));
  return {r_dual, r_prox};
}

LinkReport check_mni_reg_link(const RegProblem& problem, const IterationConfig& cfg, double tol) {
  LinkReport link;
  switch (problem.space.kind) {
    case SpaceTag::Kind::Hilbert:
      if (problem.regularizer.kind != Regularizer::Kind::Square)
        throw ParameterError("check_mni_reg_link: Hilbert route requires the squared penalty");
      link.reg = problem.loss.kind == LossSpec::Kind::Square
                     ? solve_reg_hilbert_square(problem.op, problem.loss.y, problem.lambda)
                     : solve_reg_hilbert_prox(problem, cfg);
      break;
    case SpaceTag::Kind::Lp: link.reg = solve_reg_lp_space(problem, cfg); break;
    case SpaceTag::Kind::L1: link.reg = solve_reg_l1(problem, cfg); break;
  }

  Coefs yhat = problem.op.apply_L(link.reg.solution);
  switch (problem.space.kind) {
    case SpaceTag::Kind::Hilbert: link.mni = solve_mni_hilbert(problem.op, yhat); break;
    case SpaceTag::Kind::Lp:
      link.mni = solve_mni_lp_space(problem.op, yhat, problem.space.p, cfg);
      break;
    case SpaceTag::Kind::L1: link.mni = solve_mni_l1(problem.op, yhat, cfg); break;
  }

  link.reg_norm = norm_in(link.reg.solution, problem.space);
  link.mni_norm = norm_in(link.mni.solution, problem.space);
  link.reg_objective =
      problem.loss.value(yhat) + problem.lambda * problem.regularizer.value(link.reg_norm);
  link.mni_objective = problem.loss.value(problem.op.apply_L(link.mni.solution)) +
                       problem.lambda * problem.regularizer.value(link.mni_norm);
  link.norm_gap = std::abs(link.reg_norm - link.mni_norm);
  link.objective_gap = std::abs(link.reg_objective - link.mni_objective);
  double scale = std::max(1.0, std::abs(link.reg_norm));
  double obj_scale = std::max(1.0, std::abs(link.reg_objective));
  link.passed = link.norm_gap <= tol * scale && link.objective_gap <= tol * obj_scale;
  return link;
}

}  // namespace banmin
