#include "evdep/pickands.hpp"

#include "evdep/error.hpp"
#include "evdep/ranks.hpp"
#include "evdep/rng.hpp"
#include "evdep/simulation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace evdep {

namespace {

double clip_to_envelope(double t, double a) { return std::clamp(a, std::max(t, 1.0 - t), 1.0); }

}  // namespace

PickandsEstimate PickandsEstimate::independence() { return PickandsEstimate{}; }

PickandsEstimate PickandsEstimate::comonotone() {
  PickandsEstimate a;
  a.kind_ = Kind::comonotone;
  return a;
}

PickandsEstimate PickandsEstimate::gumbel(double theta) {
  if (!(theta >= 1.0)) throw std::invalid_argument("Gumbel-Hougaard parameter must be >= 1");
  PickandsEstimate a;
  a.kind_ = Kind::gumbel;
  a.theta_ = theta;
  return a;
}

PickandsEstimate PickandsEstimate::from_spline(QuadraticSpline spline) {
  PickandsEstimate a;
  a.kind_ = Kind::spline;
  a.impl_ = std::move(spline);
  return a;
}

const QuadraticSpline* PickandsEstimate::spline() const noexcept {
  return std::get_if<QuadraticSpline>(&impl_);
}

double PickandsEstimate::Cfg::raw_log(double t) const {
  double s = 0.0;
  const std::size_t n = e1.size();
  for (std::size_t i = 0; i < n; ++i) {
    double xi;
    if (t <= 0.0)
      xi = e1[i];
    else if (t >= 1.0)
      xi = e2[i];
    else
      xi = std::min(e1[i] / (1.0 - t), e2[i] / t);
    s += std::log(xi);
  }
  return -std::numbers::egamma - s / static_cast<double>(n);
}

double PickandsEstimate::operator()(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("Pickands function evaluated outside [0,1]");
  switch (kind_) {
    case Kind::independence:
      return 1.0;
    case Kind::comonotone:
      return std::max(t, 1.0 - t);
    case Kind::gumbel:
      if (t == 0.0 || t == 1.0) return 1.0;
      return std::pow(std::pow(t, theta_) + std::pow(1.0 - t, theta_), 1.0 / theta_);
    case Kind::spline:
      return std::get<QuadraticSpline>(impl_).value(t);
    case Kind::cfg: {
      if (t == 0.0 || t == 1.0) return 1.0;
      const auto& c = std::get<Cfg>(impl_);
      const double log_a = c.raw_log(t) - (1.0 - t) * c.log_a0 - t * c.log_a1;
      return clip_to_envelope(t, std::exp(log_a));
    }
  }
  return 1.0;
}

double PickandsEstimate::derivative(double t) const {
  switch (kind_) {
    case Kind::independence:
      return 0.0;
    case Kind::comonotone:
      return t < 0.5 ? -1.0 : (t > 0.5 ? 1.0 : 0.0);
    case Kind::gumbel: {
      if (theta_ == 1.0) return 0.0;
      const double tt = std::clamp(t, 1e-300, 1.0 - 1e-16);
      const double s = std::pow(tt, theta_) + std::pow(1.0 - tt, theta_);
      return std::pow(s, 1.0 / theta_ - 1.0) *
             (std::pow(tt, theta_ - 1.0) - std::pow(1.0 - tt, theta_ - 1.0));
    }
    case Kind::spline:
      return std::get<QuadraticSpline>(impl_).derivative(t);
    case Kind::cfg: {
      const double h = 1e-5;
      const double lo = std::max(0.0, t - h), hi = std::min(1.0, t + h);
      return ((*this)(hi) - (*this)(lo)) / (hi - lo);
    }
  }
  return 0.0;
}

PickandsEstimate cfg_estimator(const PseudoObs& pobs) {
  if (pobs.cols() != 2) throw std::invalid_argument("cfg_estimator: requires d = 2");
  PickandsEstimate::Cfg c;
  for (Eigen::Index i = 0; i < pobs.rows(); ++i) {
    c.e1.push_back(-std::log(pobs(i, 0)));
    c.e2.push_back(-std::log(pobs(i, 1)));
  }
  c.log_a0 = c.raw_log(0.0);
  c.log_a1 = c.raw_log(1.0);
  PickandsEstimate a;
  a.kind_ = PickandsEstimate::Kind::cfg;
  a.impl_ = std::move(c);
  return a;
}

double ev_copula_from_a(const PickandsEstimate& a, double u1, double u2) {
  if (!(u1 > 0.0 && u1 <= 1.0 && u2 > 0.0 && u2 <= 1.0) || (u1 == 1.0 && u2 == 1.0))
    throw std::invalid_argument("ev_copula_from_a: u must lie in (0,1]^2 without (1,1)");
  const double l = std::log(u1) + std::log(u2);
  return std::exp(l * a(std::log(u2) / l));
}

namespace {

// Linearization of the endpoint-corrected CFG log-estimator at t, one weight
// per observation: sqrt(n)(log A_n - log A)(t) ~ n^{-1/2} sum_i Z_i ell_i(t).
// The functional is -int_0^inf C(e^{-s(1-t)}, e^{-st}) ds/s, so each
// observation contributes minus the integral of its multiplier weight along
// that curve. The indicator terms integrate in closed form; the derivative
// terms use the cumulative integral of dC_n/du_j along the curve in log s.
class CfgLinearization {
 public:
  CfgLinearization(const EmpiricalCopula& c, double bandwidth, int grid)
      : c_(c), h_(bandwidth), grid_(grid) {
    const auto& u = c.pobs().values();
    e1_.resize(static_cast<std::size_t>(u.rows()));
    e2_.resize(e1_.size());
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      e1_[static_cast<std::size_t>(i)] = -std::log(u(i, 0));
      e2_[static_cast<std::size_t>(i)] = -std::log(u(i, 1));
    }
  }

  std::vector<double> raw(double t) const {
    const std::size_t n = e1_.size();
    std::vector<double> out(n, 0.0);
    // -(log xi_i - mean log xi)
    std::vector<double> lxi(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double xi = t <= 0.0 ? e1_[i] : (t >= 1.0 ? e2_[i] : std::min(e1_[i] / (1.0 - t), e2_[i] / t));
      lxi[i] = std::log(xi);
    }
    add_centered(out, lxi, -1.0);
    if (t < 1.0) add_margin_term(out, t, 0);
    if (t > 0.0) add_margin_term(out, t, 1);
    return out;
  }

 private:
  static void add_centered(std::vector<double>& out, const std::vector<double>& f, double sign) {
    double mean = 0.0;
    for (double v : f) mean += v;
    mean /= static_cast<double>(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] += sign * (f[i] - mean);
  }

  // + [P(log a_i) - mean_k P(log a_k)], P(x) = int^x dC_n/du_j(curve(e^v)) dv
  void add_margin_term(std::vector<double>& out, double t, int j) const {
    const auto& e = j == 0 ? e1_ : e2_;
    const double w = j == 0 ? 1.0 - t : t;
    std::vector<double> la(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) la[i] = std::log(e[i] / w);
    const auto [lo_it, hi_it] = std::minmax_element(la.begin(), la.end());
    const double lo = *lo_it, hi = *hi_it;
    if (!(hi > lo)) return;
    const double step = (hi - lo) / grid_;
    std::vector<double> cum(static_cast<std::size_t>(grid_) + 1, 0.0);
    for (int g = 0; g < grid_; ++g) {
      const double s = std::exp(lo + (g + 0.5) * step);
      const std::array<double, 2> pt{std::exp(-s * (1.0 - t)), std::exp(-s * t)};
      const double d = c_.partial_derivative(static_cast<std::size_t>(j), pt, h_);
      cum[static_cast<std::size_t>(g) + 1] = cum[static_cast<std::size_t>(g)] + d * step;
    }
    std::vector<double> p(la.size());
    for (std::size_t i = 0; i < la.size(); ++i) {
      const double pos = std::clamp((la[i] - lo) / step, 0.0, static_cast<double>(grid_));
      const auto cell = std::min(static_cast<std::size_t>(pos), static_cast<std::size_t>(grid_) - 1);
      const double frac = pos - static_cast<double>(cell);
      p[i] = cum[cell] + frac * (cum[cell + 1] - cum[cell]);
    }
    add_centered(out, p, 1.0);
  }

  const EmpiricalCopula& c_;
  double h_;
  int grid_;
  std::vector<double> e1_, e2_;
};

}  // namespace

TestReport test_pickands_a(const PseudoObs& pobs, const MultiplierConfig& cfg) {
  if (pobs.cols() != 2) throw std::invalid_argument("test_pickands_a: requires d = 2");
  if (pobs.rows() < 4) throw std::invalid_argument("test_pickands_a: requires n >= 4");
  const auto n = pobs.rows();
  const double nd = static_cast<double>(n);
  const EmpiricalCopula c(pobs);
  const PickandsEstimate a = cfg_estimator(pobs);
  const double h = cfg.bandwidth > 0.0 ? cfg.bandwidth : c.default_bandwidth();

  Eigen::MatrixXd weights = multiplier_weights(c, pobs.values(), h);
  CfgLinearization lin(c, h, 256);
  const auto ell0 = lin.raw(0.0);
  const auto ell1 = lin.raw(1.0);

  double stat = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double l = std::log(pobs(k, 0)) + std::log(pobs(k, 1));
    const double t = std::log(pobs(k, 1)) / l;
    const double at = a(t);
    const double cev = std::exp(l * at);
    const double e = std::sqrt(nd) * (c.eval(pobs(k, 0), pobs(k, 1)) - cev);
    stat += e * e;
    // dC_A = C_A * log(u1 u2) * A(t) * d log A(t)
    const double factor = cev * l * at;
    const auto ell = lin.raw(t);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto is = static_cast<std::size_t>(i);
      const double corrected = ell[is] - (1.0 - t) * ell0[is] - t * ell1[is];
      weights(k, i) -= factor * corrected;
    }
  }
  stat /= nd;

  const Eigen::MatrixXd z = draw_multipliers(n, cfg);
  const Eigen::MatrixXd rep = (weights * z) / std::sqrt(nd);  // n x B
  std::vector<double> t_rep(static_cast<std::size_t>(rep.cols()));
  for (Eigen::Index b = 0; b < rep.cols(); ++b) t_rep[static_cast<std::size_t>(b)] = rep.col(b).squaredNorm() / nd;
  if (std::all_of(t_rep.begin(), t_rep.end(), [&](double v) { return v == t_rep.front(); }))
    throw NumericError("test_pickands_a: all bootstrap replicates are identical; p-value undefined");

  TestReport r;
  r.method = "pickands_a";
  r.statistic = stat;
  r.p_value = corrected_p_value(stat, t_rep.data(), t_rep.size());
  r.replicates = t_rep.size();
  r.seed = cfg.seed;
  return r;
}

APlot a_plot(const PseudoObs& pobs, const std::optional<std::vector<double>>& threshold) {
  if (pobs.cols() != 2) throw std::invalid_argument("a_plot: requires d = 2");
  if (threshold && threshold->size() != 2) throw std::invalid_argument("a_plot: threshold must have 2 coordinates");
  const EmpiricalCopula c(pobs);
  const double np1 = static_cast<double>(pobs.rows() + 1);
  APlot plot;
  plot.trimmed = threshold.has_value();
  plot.threshold = threshold;
  for (Eigen::Index i = 0; i < pobs.rows(); ++i) {
    const double u1 = pobs(i, 0), u2 = pobs(i, 1);
    if (threshold && (u1 < (*threshold)[0] || u2 < (*threshold)[1])) continue;
    const std::array<double, 2> pt{u1, u2};
    const auto cnt = c.count(pt);
    if (cnt == 0) {
      ++plot.dropped;
      continue;
    }
    const double l = std::log(u1) + std::log(u2);
    plot.t.push_back(std::log(u2) / l);
    plot.z.push_back(std::log(static_cast<double>(cnt) / np1) / l);
    plot.rows.push_back(i);
  }
  return plot;
}

PickandsEstimate spline_fit_a(const APlot& plot, std::size_t interior_knots) {
  auto fit = fit_pickands_spline(plot.t, plot.z, interior_knots);
  return PickandsEstimate::from_spline(std::move(fit.spline));
}

double aplot_residual(const APlot& plot, const PickandsEstimate& a) {
  if (plot.t.empty()) throw std::invalid_argument("aplot_residual: empty A-plot");
  double s = 0.0;
  for (std::size_t i = 0; i < plot.t.size(); ++i) {
    const double r = plot.z[i] - a(plot.t[i]);
    s += r * r;
  }
  return s / static_cast<double>(plot.t.size());
}

TestReport test_aplot_residual(const PseudoObs& pobs, const AplotTestConfig& cfg) {
  if (cfg.replicates == 0) throw std::invalid_argument("test_aplot_residual: replicates must be >= 1");
  const APlot plot = a_plot(pobs, cfg.threshold);
  const PickandsEstimate fitted = spline_fit_a(plot, cfg.interior_knots);
  const double stat = aplot_residual(plot, fitted);

  const CopulaFamily model(fitted);
  const auto n = static_cast<std::size_t>(pobs.rows());
  std::vector<double> t_rep;
  std::size_t failed = 0;
  for (std::size_t b = 0; b < cfg.replicates; ++b) {
    const Eigen::MatrixXd x = model.sample(n, derive_seed(cfg.seed, b));
    const PseudoObs u = pseudo_observations(x, TiesPolicy{TiesKind::average, 0});
    const APlot pb = a_plot(u, cfg.threshold);
    if (pb.t.size() < cfg.interior_knots + 3) {
      ++failed;
      continue;
    }
    t_rep.push_back(aplot_residual(pb, spline_fit_a(pb, cfg.interior_knots)));
  }
  if (t_rep.empty()) throw NumericError("test_aplot_residual: no usable bootstrap replicate");

  TestReport r;
  r.method = "aplot_resid";
  r.statistic = stat;
  r.p_value = corrected_p_value(stat, t_rep.data(), t_rep.size());
  r.replicates = t_rep.size();
  r.seed = cfg.seed;
  r.heuristic = cfg.threshold.has_value();
  r.extras["points"] = static_cast<double>(plot.t.size());
  r.extras["interior_knots"] = static_cast<double>(cfg.interior_knots);
  if (failed) r.extras["failed_replicates"] = static_cast<double>(failed);
  if (plot.dropped) r.extras["dropped_points"] = static_cast<double>(plot.dropped);
  return r;
}

}  // namespace evdep
