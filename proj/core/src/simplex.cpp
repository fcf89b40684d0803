#include "banmin/simplex.hpp"

#include <Eigen/QR>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "banmin/errors.hpp"

namespace banmin {

namespace {

// Tableau layout: rows 0..m-1 are constraints with the rhs in the last
// column, row m is the reduced-cost row with -objective in the corner.
struct Tableau {
  Eigen::MatrixXd t;
  std::vector<Eigen::Index> basis;  // basis[i] = variable occupying row i
  double pivot_tol;
  // Reduced costs accumulate roundoff over many pivots; candidates below
  // this magnitude are treated as optimal rather than as descent columns.
  double cost_tol = 1e-9;

  Eigen::Index rows() const { return t.rows() - 1; }
  Eigen::Index cols() const { return t.cols() - 1; }

  void pivot(Eigen::Index r, Eigen::Index c) {
    t.row(r) /= t(r, c);
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      if (i == r) continue;
      double f = t(i, c);
      if (f != 0.0) t.row(i) -= f * t.row(r);
    }
    basis[static_cast<std::size_t>(r)] = c;
  }

  // Bland: entering = lowest-index improving column among [0, ncols_enter),
  // leaving = lowest basis index among the ratio-test minimizers.  Improving
  // columns that are numerically zero in the current basis carry no usable
  // pivot and are skipped; a genuinely negative column signals unboundedness.
  // Returns Optimal when no improving column remains.
  LPStatus run(Eigen::Index ncols_enter) {
    const Eigen::Index m = rows();
    for (long iter = 0; iter < 1000000; ++iter) {
      Eigen::Index enter = -1, leave = -1;
      bool saw_unbounded_direction = false;
      for (Eigen::Index j = 0; j < ncols_enter && leave < 0; ++j) {
        if (t(m, j) >= -cost_tol) continue;
        enter = j;
        // leaving rule: minimum ratio, and among near-ties prefer the
        // largest pivot element (stability), then the lowest basis index
        double best_ratio = 0.0;
        double col_mag = 0.0;
        for (Eigen::Index i = 0; i < m; ++i) {
          double a = t(i, enter);
          col_mag = std::max(col_mag, std::abs(a));
          if (a <= pivot_tol) continue;
          double ratio = t(i, cols()) / a;
          if (leave < 0) {
            leave = i;
            best_ratio = ratio;
            continue;
          }
          double window = 1e-9 * (1.0 + std::abs(best_ratio));
          if (ratio < best_ratio - window) {
            leave = i;
            best_ratio = ratio;
          } else if (ratio <= best_ratio + window) {
            double cur = t(leave, enter);
            if (a > 4.0 * cur ||
                (a > 0.25 * cur &&
                 basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
              leave = i;
              best_ratio = std::min(best_ratio, ratio);
            }
          }
        }
        if (leave < 0 && col_mag > 10.0 * pivot_tol) saw_unbounded_direction = true;
      }
      if (enter < 0) return LPStatus::Optimal;
      if (leave < 0)
        return saw_unbounded_direction ? LPStatus::Unbounded : LPStatus::Optimal;
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex: iteration limit reached");
  }
};

}  // namespace

LPResult simplex_solve(const StandardLP& lp, double pivot_tol) {
  const Eigen::Index m = lp.eq_matrix.rows();
  const Eigen::Index n = lp.eq_matrix.cols();
  if (lp.cost.size() != n || lp.eq_rhs.size() != m)
    throw ParameterError("simplex_solve: inconsistent LP dimensions");
  if (!lp.cost.allFinite() || !lp.eq_matrix.allFinite() || !lp.eq_rhs.allFinite())
    throw ParameterError("simplex_solve: LP data must be finite");

  // Phase 1 tableau: [A | I | b] with b >= 0, minimizing the artificial sum.
  Tableau tab;
  tab.pivot_tol = pivot_tol;
  tab.t.setZero(m + 1, n + m + 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    double s = lp.eq_rhs(i) < 0.0 ? -1.0 : 1.0;
    tab.t.block(i, 0, 1, n) = s * lp.eq_matrix.row(i);
    tab.t(i, n + i) = 1.0;
    tab.t(i, n + m) = s * lp.eq_rhs(i);
    tab.basis.push_back(n + i);
  }
  // Reduced costs of the phase-1 objective: subtract each constraint row.
  for (Eigen::Index i = 0; i < m; ++i) tab.t.row(m) -= tab.t.row(i);
  tab.t.block(m, n, 1, m).setZero();

  // The phase-1 objective is bounded below by zero, so an "unbounded"
  // verdict here is tableau roundoff; the artificial sum decides either way.
  tab.run(n + m);
  double artificial_sum = -tab.t(m, n + m);
  if (artificial_sum > 1e-8) {
    LPResult res;
    res.status = LPStatus::Infeasible;
    res.value = artificial_sum;
    return res;
  }

  // Drive leftover artificials out of the basis; a row with no real pivot
  // column is a redundant constraint and can be zeroed out.
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.basis[static_cast<std::size_t>(i)] < n) continue;
    Eigen::Index piv = -1;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(tab.t(i, j)) > pivot_tol) {
        piv = j;
        break;
      }
    }
    if (piv >= 0)
      tab.pivot(i, piv);
    else
      tab.t.row(i).setZero();
  }

  // Phase 2: install the real cost row expressed in the current basis.
  tab.t.row(m).setZero();
  tab.t.block(m, 0, 1, n) = lp.cost.transpose();
  for (Eigen::Index i = 0; i < m; ++i) {
    Eigen::Index b = tab.basis[static_cast<std::size_t>(i)];
    if (b < n && tab.t(m, b) != 0.0) tab.t.row(m) -= tab.t(m, b) * tab.t.row(i);
  }

  LPStatus status = tab.run(n);
  LPResult res;
  res.status = status;
  if (status == LPStatus::Unbounded) return res;

  // Basis repair: re-solve the basic system against the original data, so
  // accumulated tableau roundoff does not leak into the reported vertex.
  std::vector<Eigen::Index> basic_cols;
  for (Eigen::Index i = 0; i < m; ++i) {
    Eigen::Index b = tab.basis[static_cast<std::size_t>(i)];
    if (b < n) basic_cols.push_back(b);
  }
  Eigen::MatrixXd ab(m, static_cast<Eigen::Index>(basic_cols.size()));
  for (std::size_t k = 0; k < basic_cols.size(); ++k) ab.col(static_cast<Eigen::Index>(k)) = lp.eq_matrix.col(basic_cols[k]);
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(ab);
  Eigen::VectorXd xb = cod.solve(lp.eq_rhs);

  res.x = Eigen::VectorXd::Zero(n);
  for (std::size_t k = 0; k < basic_cols.size(); ++k) res.x(basic_cols[k]) = xb(static_cast<Eigen::Index>(k));
  res.value = lp.cost.dot(res.x);

  double feas = (lp.eq_matrix * res.x - lp.eq_rhs).lpNorm<Eigen::Infinity>();
  if (feas > 1e-9)
    throw NumericalDualityError("simplex_solve: solution violates constraints by " +
                                std::to_string(feas));
  return res;
}

}  // namespace banmin
