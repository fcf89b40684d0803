#ifndef BANMIN_PROX_HPP
#define BANMIN_PROX_HPP

#include <Eigen/Core>
#include <functional>

#include "banmin/sparse_seq.hpp"

namespace banmin {

/// Data-fidelity term Q_y.  Square is ||z - y||^2 (no 1/2), Hinge is
/// sum_j max{1 - y_j z_j, 0} with labels y_j in {-1,+1}, EpsInsensitive is
/// sum_j max{|z_j - y_j| - eps, 0}.
struct LossSpec {
  enum class Kind { Square, Hinge, EpsInsensitive };

  Kind kind = Kind::Square;
  double eps = 0.0;  // EpsInsensitive only
  Eigen::VectorXd y;

  static LossSpec square(Eigen::VectorXd y);
  static LossSpec hinge(Eigen::VectorXd labels);
  static LossSpec eps_insensitive(Eigen::VectorXd y, double eps);

  bool differentiable() const { return kind == Kind::Square; }
  double value(const Eigen::VectorXd& z) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& z) const;  // Square only
};

/// Componentwise shrinkage max{|x_j| - tau, 0} sign(x_j); the prox of
/// tau * ||.||_1.  Always lands in c_c.
SparseSeq soft_threshold(const SparseSeq& x, double tau);
double soft_threshold(double x, double tau);

/// Prox of sigma * iota_y^* where iota_y^*(c) = sigma<y, c>: a - sigma*y.
Eigen::VectorXd prox_indicator_conj(const Eigen::VectorXd& a, const Eigen::VectorXd& y,
                                    double sigma);

/// argmin_b 1/2 (a-b)^2 + sigma * max{1 - y b, 0}, y in {-1,+1}.
double prox_hinge(double a, double y, double sigma);

/// argmin_b 1/2 (a-b)^2 + sigma * max{|b - y| - eps, 0}.
double prox_eps_insensitive(double a, double y, double eps, double sigma);

/// Prox of sigma * Q_y, componentwise for the piecewise-linear losses and
/// (a + 2 sigma y) / (1 + 2 sigma) for the square loss.
Eigen::VectorXd prox_vector_loss(const Eigen::VectorXd& a, const LossSpec& loss, double sigma);

using ProxFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)>;

/// Prox of sigma * f^* from the prox of f via the scaled Moreau identity:
/// a - sigma * prox_f(a / sigma, 1 / sigma).
Eigen::VectorXd prox_conjugate_via_moreau(const ProxFn& prox_f, const Eigen::VectorXd& a,
                                          double sigma);

/// Prox of sigma * Q_y^* evaluated through the Moreau identity.
Eigen::VectorXd prox_loss_conj(const Eigen::VectorXd& a, const LossSpec& loss, double sigma);

/// argmin_b 1/2 (a-b)^2 + objective(b) for a convex 1-D objective, by
/// bracket expansion followed by golden-section search down to an interval
/// of width 1e-10.  Throws OracleError if no bracket is found.
double prox_numeric_oracle_1d(const std::function<double(double)>& objective, double a);

}  // namespace banmin

#endif  // BANMIN_PROX_HPP
