#include "evdep/spline.hpp"

#include "evdep/detail/active_set_qp.hpp"
#include "evdep/error.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace evdep {

std::vector<double> QuadraticSpline::make_knots(std::size_t interior_knots) {
  std::vector<double> k{0.0, 0.0, 0.0};
  const double step = 1.0 / static_cast<double>(interior_knots + 1);
  for (std::size_t j = 1; j <= interior_knots; ++j) k.push_back(static_cast<double>(j) * step);
  k.insert(k.end(), {1.0, 1.0, 1.0});
  return k;
}

QuadraticSpline::QuadraticSpline(std::size_t interior_knots, Eigen::VectorXd coefficients)
    : interior_(interior_knots), knots_(make_knots(interior_knots)), coef_(std::move(coefficients)) {
  if (static_cast<std::size_t>(coef_.size()) != interior_knots + 3)
    throw std::invalid_argument("QuadraticSpline: expected interior_knots + 3 coefficients");
}

std::size_t QuadraticSpline::basis(const std::vector<double>& knots, double t, double out[3]) {
  const std::size_t last_span = knots.size() - 4;  // span index of the final interval
  t = std::clamp(t, 0.0, 1.0);
  auto it = std::upper_bound(knots.begin() + 2, knots.begin() + static_cast<std::ptrdiff_t>(last_span) + 1, t);
  const std::size_t span = std::min(static_cast<std::size_t>(it - knots.begin()) - 1, last_span);
  double left[3], right[3];
  out[0] = 1.0;
  for (int j = 1; j <= 2; ++j) {
    left[j] = t - knots[span + 1 - static_cast<std::size_t>(j)];
    right[j] = knots[span + static_cast<std::size_t>(j)] - t;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double temp = out[r] / (right[r + 1] + left[j - r]);
      out[r] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    out[j] = saved;
  }
  return span - 2;
}

double QuadraticSpline::value(double t) const {
  double b[3];
  const std::size_t first = basis(knots_, t, b);
  return b[0] * coef_(static_cast<Eigen::Index>(first)) + b[1] * coef_(static_cast<Eigen::Index>(first + 1)) +
         b[2] * coef_(static_cast<Eigen::Index>(first + 2));
}

Eigen::MatrixXd QuadraticSpline::derivative_map(const std::vector<double>& knots) {
  const auto nc = static_cast<Eigen::Index>(knots.size() - 3);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(nc - 1, nc);
  for (Eigen::Index j = 0; j + 1 < nc; ++j) {
    const auto js = static_cast<std::size_t>(j);
    const double w = 2.0 / (knots[js + 3] - knots[js + 1]);
    d(j, j) = -w;
    d(j, j + 1) = w;
  }
  return d;
}

double QuadraticSpline::derivative(double t) const {
  // s' is the linear interpolant of d_j at nodes knots[j+2] = 0, h, ..., 1
  t = std::clamp(t, 0.0, 1.0);
  const double h = 1.0 / static_cast<double>(interior_ + 1);
  const auto cell = std::min(static_cast<Eigen::Index>(t / h), static_cast<Eigen::Index>(interior_));
  const double frac = std::clamp(t / h - static_cast<double>(cell), 0.0, 1.0);
  auto dj = [&](Eigen::Index j) {
    const auto js = static_cast<std::size_t>(j);
    return 2.0 * (coef_(j + 1) - coef_(j)) / (knots_[js + 3] - knots_[js + 1]);
  };
  return (1.0 - frac) * dj(cell) + frac * dj(cell + 1);
}

SplineFit fit_pickands_spline(std::span<const double> x, std::span<const double> y,
                              std::size_t interior_knots) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_pickands_spline: x and y differ in length");
  if (interior_knots < 1) throw std::invalid_argument("fit_pickands_spline: need at least one interior knot");
  if (x.size() < interior_knots + 3)
    throw std::invalid_argument("fit_pickands_spline: need at least interior_knots + 3 points, got " +
                                std::to_string(x.size()));
  const auto knots = QuadraticSpline::make_knots(interior_knots);
  const auto nc = static_cast<Eigen::Index>(interior_knots + 3);

  Eigen::MatrixXd btb = Eigen::MatrixXd::Zero(nc, nc);
  Eigen::VectorXd bty = Eigen::VectorXd::Zero(nc);
  for (std::size_t i = 0; i < x.size(); ++i) {
    double b[3];
    const auto first = static_cast<Eigen::Index>(QuadraticSpline::basis(knots, x[i], b));
    for (int r = 0; r < 3; ++r) {
      bty(first + r) += b[r] * y[i];
      for (int s = 0; s < 3; ++s) btb(first + r, first + s) += b[r] * b[s];
    }
  }

  const Eigen::MatrixXd dmap = QuadraticSpline::derivative_map(knots);
  const auto nd = dmap.rows();
  // second differences of the derivative coefficients
  Eigen::MatrixXd curv = dmap.bottomRows(nd - 1) - dmap.topRows(nd - 1);

  // A tiny curvature penalty pins down coefficients with no data nearby.
  const double scale = btb.trace() / static_cast<double>(nc) + 1.0;
  Eigen::MatrixXd hess = btb;
  if (nd > 2) {
    Eigen::MatrixXd dd = curv.bottomRows(nd - 2) - curv.topRows(nd - 2);
    hess += 1e-9 * scale * dd.transpose() * dd;
  }
  hess += 1e-12 * scale * Eigen::MatrixXd::Identity(nc, nc);
  const Eigen::VectorXd grad = -bty;

  Eigen::MatrixXd eq = Eigen::MatrixXd::Zero(2, nc);
  eq(0, 0) = 1.0;
  eq(1, nc - 1) = 1.0;
  const Eigen::VectorXd eq_rhs = Eigen::VectorXd::Ones(2);

  // convexity: d_{j+1} - d_j >= 0; slopes: d_0 >= -1, -d_last >= -1
  Eigen::MatrixXd ineq(curv.rows() + 2, nc);
  ineq.topRows(curv.rows()) = curv;
  ineq.row(curv.rows()) = dmap.row(0);
  ineq.row(curv.rows() + 1) = -dmap.row(nd - 1);
  Eigen::VectorXd ineq_rhs = Eigen::VectorXd::Zero(ineq.rows());
  ineq_rhs(curv.rows()) = -1.0;
  ineq_rhs(curv.rows() + 1) = -1.0;

  auto qp = detail::solve_qp(hess, grad, eq, eq_rhs, ineq, ineq_rhs, Eigen::VectorXd::Ones(nc));
  if (qp.max_violation > 1e-8)
    throw NumericError("fit_pickands_spline: constraint violation " + std::to_string(qp.max_violation));
  // snap the endpoint equalities exactly
  qp.x(0) = 1.0;
  qp.x(nc - 1) = 1.0;

  QuadraticSpline spline(interior_knots, qp.x);
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - spline.value(x[i]);
    rss += r * r;
  }
  return SplineFit{std::move(spline), rss, qp.iterations};
}

}  // namespace evdep
