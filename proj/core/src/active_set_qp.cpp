#include "evdep/detail/active_set_qp.hpp"

#include "evdep/error.hpp"

#include <Eigen/LU>

#include <cmath>
#include <limits>
#include <vector>

namespace evdep::detail {

QpResult solve_qp(const Eigen::MatrixXd& H, const Eigen::VectorXd& g, const Eigen::MatrixXd& E,
                  const Eigen::VectorXd& e, const Eigen::MatrixXd& G, const Eigen::VectorXd& h,
                  Eigen::VectorXd x, int max_iterations) {
  const auto nv = H.rows();
  const auto ne = E.rows();
  const auto ni = G.rows();
  constexpr double kTol = 1e-11;

  std::vector<bool> active(static_cast<std::size_t>(ni), false);
  for (Eigen::Index i = 0; i < ni; ++i)
    active[static_cast<std::size_t>(i)] = std::abs(G.row(i).dot(x) - h(i)) <= kTol;

  QpResult out;
  for (int it = 0; it < max_iterations; ++it) {
    out.iterations = it + 1;
    std::vector<Eigen::Index> work;
    for (Eigen::Index i = 0; i < ni; ++i)
      if (active[static_cast<std::size_t>(i)]) work.push_back(i);
    const auto nw = ne + static_cast<Eigen::Index>(work.size());

    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(nv + nw, nv + nw);
    kkt.topLeftCorner(nv, nv) = H;
    Eigen::MatrixXd aw(nw, nv);
    if (ne > 0) aw.topRows(ne) = E;
    for (std::size_t k = 0; k < work.size(); ++k) aw.row(ne + static_cast<Eigen::Index>(k)) = G.row(work[k]);
    kkt.topRightCorner(nv, nw) = aw.transpose();
    kkt.bottomLeftCorner(nw, nv) = aw;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nv + nw);
    rhs.head(nv) = -(H * x + g);
    const Eigen::VectorXd sol = kkt.fullPivLu().solve(rhs);
    const Eigen::VectorXd p = sol.head(nv);

    if (p.norm() <= 1e-12 * (1.0 + x.norm())) {
      // multipliers of the working inequalities are -nu
      Eigen::Index drop = -1;
      double most_negative = -1e-12;
      for (std::size_t k = 0; k < work.size(); ++k) {
        const double lambda = -sol(nv + ne + static_cast<Eigen::Index>(k));
        if (lambda < most_negative) {
          most_negative = lambda;
          drop = work[k];
        }
      }
      if (drop < 0) break;
      active[static_cast<std::size_t>(drop)] = false;
      continue;
    }

    double alpha = 1.0;
    Eigen::Index blocking = -1;
    for (Eigen::Index i = 0; i < ni; ++i) {
      if (active[static_cast<std::size_t>(i)]) continue;
      const double gp = G.row(i).dot(p);
      if (gp < -1e-15) {
        const double step = (h(i) - G.row(i).dot(x)) / gp;
        if (step < alpha) {
          alpha = std::max(step, 0.0);
          blocking = i;
        }
      }
    }
    x += alpha * p;
    if (blocking >= 0) active[static_cast<std::size_t>(blocking)] = true;
    if (it + 1 == max_iterations) throw NumericError("solve_qp: active-set iteration limit reached");
  }

  double viol = 0.0;
  if (ne > 0) viol = (E * x - e).cwiseAbs().maxCoeff();
  if (ni > 0) viol = std::max(viol, (h - G * x).cwiseMax(0.0).maxCoeff());
  out.x = std::move(x);
  out.max_violation = viol;
  return out;
}

}  // namespace evdep::detail
