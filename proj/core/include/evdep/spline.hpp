#pragma once

#include <Eigen/Core>

#include <span>
#include <vector>

namespace evdep {

// Clamped quadratic B-spline on [0,1] with equally spaced interior knots.
class QuadraticSpline {
 public:
  QuadraticSpline(std::size_t interior_knots, Eigen::VectorXd coefficients);

  std::size_t interior_knots() const noexcept { return interior_; }
  const std::vector<double>& knots() const noexcept { return knots_; }
  const Eigen::VectorXd& coefficients() const noexcept { return coef_; }

  double value(double t) const;
  double derivative(double t) const;

  // Nonzero basis values at t: writes 3 values and returns the first index.
  static std::size_t basis(const std::vector<double>& knots, double t, double out[3]);
  static std::vector<double> make_knots(std::size_t interior_knots);

  // Coefficients of the (piecewise linear) derivative in terms of c:
  // d_j = 2 (c_{j+1} - c_j) / (k_{j+3} - k_{j+1}).
  static Eigen::MatrixXd derivative_map(const std::vector<double>& knots);

 private:
  std::size_t interior_;
  std::vector<double> knots_;
  Eigen::VectorXd coef_;
};

struct SplineFit {
  QuadraticSpline spline;
  double residual_ss = 0.0;
  int iterations = 0;
};

// Least-squares quadratic spline through (x, y) subject to s(0) = s(1) = 1,
// convexity, s'(0) >= -1 and s'(1) <= 1. Together these imply
// max(t, 1-t) <= s(t) <= 1 on all of [0,1].
SplineFit fit_pickands_spline(std::span<const double> x, std::span<const double> y,
                              std::size_t interior_knots);

}  // namespace evdep
