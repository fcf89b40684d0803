#ifndef BANMIN_SRC_DETAIL_HPP
#define BANMIN_SRC_DETAIL_HPP

#include <Eigen/Core>

#include "banmin/iteration.hpp"

namespace banmin::detail {

// Rejects user-supplied primal/dual steps violating tau*sigma*|L|^2 < 1;
// defined in mni.cpp.
void validate_steps(const IterationConfig& cfg, double op_norm);

// Jacobian of c -> L(dmap_lq(L* c, q)) over dense coordinates; defined in mni.cpp.
Eigen::MatrixXd dmap_system_jacobian(const Eigen::MatrixXd& u, const Eigen::VectorXd& v,
                                     double q);

}  // namespace banmin::detail

#endif  // BANMIN_SRC_DETAIL_HPP
