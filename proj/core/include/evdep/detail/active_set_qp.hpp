#pragma once

#include <Eigen/Core>

namespace evdep::detail {

struct QpResult {
  Eigen::VectorXd x;
  int iterations = 0;
  double max_violation = 0.0;
};

// Primal active-set method for
//   min 1/2 x'Hx + g'x  s.t.  E x = e,  G x >= h
// started from a feasible x0. H must be positive definite.
QpResult solve_qp(const Eigen::MatrixXd& H, const Eigen::VectorXd& g, const Eigen::MatrixXd& E,
                  const Eigen::VectorXd& e, const Eigen::MatrixXd& G, const Eigen::VectorXd& h,
                  Eigen::VectorXd x0, int max_iterations = 500);

}  // namespace evdep::detail
