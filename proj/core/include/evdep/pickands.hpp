#pragma once

#include "evdep/data.hpp"
#include "evdep/empirical_copula.hpp"
#include "evdep/report.hpp"
#include "evdep/spline.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace evdep {

// A bivariate Pickands dependence function t -> A(t) on [0,1].
class PickandsEstimate {
 public:
  enum class Kind { cfg, spline, gumbel, independence, comonotone };

  static PickandsEstimate independence();
  static PickandsEstimate comonotone();
  static PickandsEstimate gumbel(double theta);
  static PickandsEstimate from_spline(QuadraticSpline spline);

  Kind kind() const noexcept { return kind_; }
  double operator()(double t) const;
  // Analytic where available; central difference for cfg.
  double derivative(double t) const;
  const QuadraticSpline* spline() const noexcept;
  double parameter() const noexcept { return theta_; }

 private:
  friend PickandsEstimate cfg_estimator(const PseudoObs& pobs);

  struct Cfg {
    std::vector<double> e1, e2;  // -log U_i1, -log U_i2
    double log_a0 = 0.0, log_a1 = 0.0;
    double raw_log(double t) const;
  };

  Kind kind_ = Kind::independence;
  double theta_ = 1.0;
  std::variant<std::monostate, Cfg, QuadraticSpline> impl_;
};

// Rank-based Caperaa-Fougeres-Genest estimator, endpoint corrected and
// clipped into [max(t,1-t), 1].
PickandsEstimate cfg_estimator(const PseudoObs& pobs);

// exp{ log(u1 u2) A(log u2 / log(u1 u2)) } for u in (0,1]^2 minus (1,1).
double ev_copula_from_a(const PickandsEstimate& a, double u1, double u2);

// Test based on sqrt(n){C_n - C_{A_n}} with the CFG estimator and a
// linearized multiplier bootstrap.
TestReport test_pickands_a(const PseudoObs& pobs, const MultiplierConfig& cfg);

struct APlot {
  std::vector<double> t, z;
  std::vector<Eigen::Index> rows;  // source row of each point
  bool trimmed = false;
  std::optional<std::vector<double>> threshold;
  std::size_t dropped = 0;  // points with C_n(U_i) = 0
};

// Points (log U2 / log(U1 U2), log C_n(U) / log(U1 U2)). C_n here counts
// with weight 1/(n+1) so that comonotone data land exactly on (1/2, 1/2).
APlot a_plot(const PseudoObs& pobs, const std::optional<std::vector<double>>& threshold = std::nullopt);

// Convex quadratic spline fit to the A-plot (see fit_pickands_spline).
PickandsEstimate spline_fit_a(const APlot& plot, std::size_t interior_knots = 10);

// Mean squared residual of the A-plot around A.
double aplot_residual(const APlot& plot, const PickandsEstimate& a);

struct AplotTestConfig {
  std::size_t replicates = 250;
  std::uint64_t seed = 0;
  std::optional<std::vector<double>> threshold;
  std::size_t interior_knots = 10;
};

// Residual statistic with parametric-bootstrap p-value, simulating from the
// extreme-value copula with the fitted spline.
TestReport test_aplot_residual(const PseudoObs& pobs, const AplotTestConfig& cfg);

}  // namespace evdep
