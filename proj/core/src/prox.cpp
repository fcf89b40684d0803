#include "banmin/prox.hpp"

#include <cmath>

#include "banmin/errors.hpp"

namespace banmin {

LossSpec LossSpec::square(Eigen::VectorXd y) {
  LossSpec l;
  l.kind = Kind::Square;
  l.y = std::move(y);
  return l;
}

LossSpec LossSpec::hinge(Eigen::VectorXd labels) {
  for (Eigen::Index j = 0; j < labels.size(); ++j)
    if (labels(j) != 1.0 && labels(j) != -1.0)
      throw ParameterError("LossSpec::hinge: labels must be +1 or -1");
  LossSpec l;
  l.kind = Kind::Hinge;
  l.y = std::move(labels);
  return l;
}

LossSpec LossSpec::eps_insensitive(Eigen::VectorXd y, double eps) {
  if (!(eps > 0.0)) throw ParameterError("LossSpec::eps_insensitive: eps must be positive");
  LossSpec l;
  l.kind = Kind::EpsInsensitive;
  l.eps = eps;
  l.y = std::move(y);
  return l;
}

double LossSpec::value(const Eigen::VectorXd& z) const {
  if (z.size() != y.size()) throw ParameterError("LossSpec::value: dimension mismatch");
  switch (kind) {
    case Kind::Square: return (z - y).squaredNorm();
    case Kind::Hinge: {
      double s = 0.0;
      for (Eigen::Index j = 0; j < z.size(); ++j) s += std::max(1.0 - y(j) * z(j), 0.0);
      return s;
    }
    case Kind::EpsInsensitive: {
      double s = 0.0;
      for (Eigen::Index j = 0; j < z.size(); ++j) s += std::max(std::abs(z(j) - y(j)) - eps, 0.0);
      return s;
    }
  }
  return 0.0;
}

Eigen::VectorXd LossSpec::gradient(const Eigen::VectorXd& z) const {
  if (kind != Kind::Square) throw ParameterError("LossSpec::gradient: loss is not differentiable");
  return 2.0 * (z - y);
}

double soft_threshold(double x, double tau) {
  double mag = std::abs(x) - tau;
  if (mag <= 0.0) return 0.0;
  return x > 0 ? mag : -mag;
}

SparseSeq soft_threshold(const SparseSeq& x, double tau) {
  if (!(tau > 0.0)) throw ParameterError("soft_threshold: tau must be positive");
  std::vector<SparseSeq::Entry> out;
  for (const auto& [j, v] : x.entries()) {
    double s = soft_threshold(v, tau);
    if (s != 0.0) out.emplace_back(j, s);
  }
  return SparseSeq::from_pairs(std::move(out));
}

Eigen::VectorXd prox_indicator_conj(const Eigen::VectorXd& a, const Eigen::VectorXd& y,
                                    double sigma) {
  if (a.size() != y.size()) throw ParameterError("prox_indicator_conj: dimension mismatch");
  return a - sigma * y;
}

double prox_hinge(double a, double y, double sigma) {
  // Piecewise in the margin t = y*a: identity when the hinge is inactive,
  // pulled to the kink at t = 1 in the middle band, shifted by sigma below it.
  double t = y * a;
  if (t >= 1.0) return a;
  if (t >= 1.0 - sigma) return y;
  return y * (t + sigma);
}

double prox_eps_insensitive(double a, double y, double eps, double sigma) {
  double d = a - y;
  if (std::abs(d) <= eps) return a;
  if (d > eps + sigma) return a - sigma;
  if (d > eps) return y + eps;
  if (d < -eps - sigma) return a + sigma;
  return y - eps;
}

Eigen::VectorXd prox_vector_loss(const Eigen::VectorXd& a, const LossSpec& loss, double sigma) {
  if (a.size() != loss.y.size()) throw ParameterError("prox_vector_loss: dimension mismatch");
  if (!(sigma > 0.0)) throw ParameterError("prox_vector_loss: sigma must be positive");
  Eigen::VectorXd out(a.size());
  switch (loss.kind) {
    case LossSpec::Kind::Square:
      out = (a + 2.0 * sigma * loss.y) / (1.0 + 2.0 * sigma);
      break;
    case LossSpec::Kind::Hinge:
      for (Eigen::Index j = 0; j < a.size(); ++j) out(j) = prox_hinge(a(j), loss.y(j), sigma);
      break;
    case LossSpec::Kind::EpsInsensitive:
      for (Eigen::Index j = 0; j < a.size(); ++j)
        out(j) = prox_eps_insensitive(a(j), loss.y(j), loss.eps, sigma);
      break;
  }
  return out;
}

Eigen::VectorXd prox_conjugate_via_moreau(const ProxFn& prox_f, const Eigen::VectorXd& a,
                                          double sigma) {
  if (!(sigma > 0.0)) throw ParameterError("prox_conjugate_via_moreau: sigma must be positive");
  return a - sigma * prox_f(a / sigma, 1.0 / sigma);
}

Eigen::VectorXd prox_loss_conj(const Eigen::VectorXd& a, const LossSpec& loss, double sigma) {
  return prox_conjugate_via_moreau(
      [&loss](const Eigen::VectorXd& v, double s) { return prox_vector_loss(v, loss, s); }, a,
      sigma);
}

double prox_numeric_oracle_1d(const std::function<double(double)>& objective, double a) {
  auto h = [&](double b) { return 0.5 * (a - b) * (a - b) + objective(b); };

  // Expand a symmetric bracket around a until the interior beats both ends.
  double radius = 2.0;
  double lo = a - radius, hi = a + radius;
  for (int grow = 0; grow < 60; ++grow) {
    double mid = 0.5 * (lo + hi);
    if (h(mid) <= h(lo) && h(mid) <= h(hi)) break;
    radius *= 2.0;
    lo = a - radius;
    hi = a + radius;
    if (grow == 59) throw OracleError("prox_numeric_oracle_1d: could not bracket a minimizer");
  }

  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - invphi * (hi - lo);
  double d = lo + invphi * (hi - lo);
  double hc = h(c), hd = h(d);
  while (hi - lo > 1e-10) {
    if (hc < hd) {
      hi = d;
      d = c;
      hd = hc;
      c = hi - invphi * (hi - lo);
      hc = h(c);
    } else {
      lo = c;
      c = d;
      hc = hd;
      d = lo + invphi * (hi - lo);
      hd = h(d);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace banmin
