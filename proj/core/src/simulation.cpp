#include "evdep/simulation.hpp"

#include "evdep/error.hpp"
#include "evdep/ranks.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace evdep {

namespace {

constexpr double kT4Dof = 4.0;

struct FamilyName {
  Family family;
  const char* name;
};

constexpr FamilyName kNames[] = {
    {Family::gumbel, "gumbel"},         {Family::clayton, "clayton"},
    {Family::frank, "frank"},           {Family::gaussian, "gaussian"},
    {Family::student_t4, "student_t4"}, {Family::independence, "independence"},
    {Family::ev_from_a, "ev_from_a"},
};

void validate(Family family, double p) {
  switch (family) {
    case Family::gumbel:
      if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("gumbel: theta must be >= 1");
      break;
    case Family::clayton:
      if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("clayton: theta must be > 0");
      break;
    case Family::frank:
      if (p == 0.0 || !std::isfinite(p)) throw std::invalid_argument("frank: theta must be nonzero");
      break;
    case Family::gaussian:
    case Family::student_t4:
      if (!(p > -1.0 && p < 1.0)) throw std::invalid_argument("elliptical: rho must lie in (-1,1)");
      break;
    case Family::independence:
      break;
    case Family::ev_from_a:
      throw std::invalid_argument("ev_from_a requires a Pickands function");
  }
}

// Keeps a cdf value strictly inside (0,1).
double interior(double u) {
  return std::clamp(u, std::numeric_limits<double>::min(), std::nextafter(1.0, 0.0));
}

double bisect(const std::function<double(double)>& f, double target, double lo, double hi, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// First Debye function D1(x) = x^{-1} int_0^x t/(e^t - 1) dt.
double debye1(double x) {
  if (x == 0.0) return 1.0;
  if (x < 0.0) return debye1(-x) - x / 2.0;
  auto f = [](double t) { return t == 0.0 ? 1.0 : t / std::expm1(t); };
  const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, x, 15, 1e-14);
  return integral / x;
}

double frank_tau(double theta) { return 1.0 - 4.0 / theta + 4.0 * debye1(theta) / theta; }

// P(V <= v | U = w) for the elliptical families.
double elliptical_conditional(Family family, double rho, double w, double v) {
  const double s = std::sqrt(1.0 - rho * rho);
  if (family == Family::gaussian) {
    const boost::math::normal_distribution<double> nd;
    const double x = boost::math::quantile(nd, w);
    const double y = boost::math::quantile(nd, v);
    return boost::math::cdf(nd, (y - rho * x) / s);
  }
  const boost::math::students_t_distribution<double> t(kT4Dof), t1(kT4Dof + 1.0);
  const double x = boost::math::quantile(t, w);
  const double y = boost::math::quantile(t, v);
  const double scale = std::sqrt((kT4Dof + x * x) * (1.0 - rho * rho) / (kT4Dof + 1.0));
  return boost::math::cdf(t1, (y - rho * x) / scale);
}

}  // namespace

Family parse_family(const std::string& name) {
  for (const auto& f : kNames)
    if (name == f.name) return f.family;
  if (name == "t4" || name == "student_t") return Family::student_t4;
  if (name == "normal") return Family::gaussian;
  throw std::invalid_argument("unknown copula family '" + name + "'");
}

std::string to_string(Family family) {
  for (const auto& f : kNames)
    if (family == f.family) return f.name;
  return "unknown";
}

CopulaFamily::CopulaFamily(Family family, double parameter) : family_(family), parameter_(parameter) {
  validate(family, parameter);
  if (family == Family::independence) parameter_ = 0.0;
}

CopulaFamily::CopulaFamily(PickandsEstimate a)
    : family_(Family::ev_from_a),
      parameter_(a.parameter()),
      pickands_(std::make_shared<const PickandsEstimate>(std::move(a))) {}

CopulaFamily CopulaFamily::from_tau(Family family, double tau) {
  return CopulaFamily(family, param_from_tau(family, tau));
}

double param_from_tau(Family family, double tau) {
  if (!std::isfinite(tau)) throw std::invalid_argument("tau must be finite");
  switch (family) {
    case Family::gumbel:
      if (!(tau >= 0.0 && tau < 1.0)) throw std::invalid_argument("gumbel: tau must lie in [0,1)");
      return 1.0 / (1.0 - tau);
    case Family::clayton:
      if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("clayton: tau must lie in (0,1)");
      return 2.0 * tau / (1.0 - tau);
    case Family::gaussian:
    case Family::student_t4:
      if (!(tau > -1.0 && tau < 1.0)) throw std::invalid_argument("elliptical: tau must lie in (-1,1)");
      return std::sin(std::numbers::pi * tau / 2.0);
    case Family::frank: {
      if (!(tau > -1.0 && tau < 1.0) || tau == 0.0)
        throw std::invalid_argument("frank: tau must lie in (-1,1) and be nonzero");
      const double target = std::abs(tau);
      double hi = 1.0;
      while (frank_tau(hi) < target) hi *= 2.0;
      const double theta = bisect(frank_tau, target, 0.0, hi, 1e-10);
      return tau > 0.0 ? theta : -theta;
    }
    case Family::independence:
      if (tau != 0.0) throw std::invalid_argument("independence: tau must be 0");
      return 0.0;
    case Family::ev_from_a:
      break;
  }
  throw std::invalid_argument("ev_from_a has no tau parameterization");
}

double tau_from_param(Family family, double p) {
  validate(family, p);
  switch (family) {
    case Family::gumbel:
      return 1.0 - 1.0 / p;
    case Family::clayton:
      return p / (p + 2.0);
    case Family::frank:
      return frank_tau(p);
    case Family::gaussian:
    case Family::student_t4:
      return 2.0 / std::numbers::pi * std::asin(p);
    default:
      return 0.0;
  }
}

double analytic_copula(const CopulaFamily& family, double u1, double u2) {
  if (!(u1 >= 0.0 && u1 <= 1.0 && u2 >= 0.0 && u2 <= 1.0))
    throw std::invalid_argument("analytic_copula: u must lie in [0,1]^2");
  if (u1 == 0.0 || u2 == 0.0) return 0.0;
  if (u1 == 1.0) return u2;
  if (u2 == 1.0) return u1;
  const double p = family.parameter();
  switch (family.family()) {
    case Family::independence:
      return u1 * u2;
    case Family::gumbel: {
      const double s = std::pow(-std::log(u1), p) + std::pow(-std::log(u2), p);
      return std::exp(-std::pow(s, 1.0 / p));
    }
    case Family::clayton:
      return std::pow(std::pow(u1, -p) + std::pow(u2, -p) - 1.0, -1.0 / p);
    case Family::frank: {
      const double k = std::expm1(-p);
      return -std::log1p(std::expm1(-p * u1) * std::expm1(-p * u2) / k) / p;
    }
    case Family::gaussian:
    case Family::student_t4: {
      const Family f = family.family();
      auto g = [&](double w) { return elliptical_conditional(f, p, interior(w), u2); };
      return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, u1, 15, 1e-10);
    }
    case Family::ev_from_a:
      return ev_copula_from_a(family.pickands(), u1, u2);
  }
  return 0.0;
}

double CopulaFamily::cdf(double u1, double u2) const { return analytic_copula(*this, u1, u2); }

double ev_conditional_cdf(const PickandsEstimate& a, double u, double v) {
  if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("ev_conditional_cdf: u must lie in (0,1)");
  if (v <= 0.0) return 0.0;
  if (v >= 1.0) return 1.0;
  const double l = std::log(u * v);
  const double z = std::log(v) / l;
  const double c = std::exp(l * a(z));
  const double d = c / u * (a(z) - z * a.derivative(z));
  return std::clamp(d, 0.0, 1.0);
}

double ev_conditional_quantile(const PickandsEstimate& a, double u, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("ev_conditional_quantile: p must lie in [0,1]");
  return bisect([&](double v) { return ev_conditional_cdf(a, u, v); }, p, 0.0, 1.0, 1e-10);
}

Eigen::MatrixXd CopulaFamily::sample(std::size_t n, Rng& rng) const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(n), 2);
  std::exponential_distribution<double> expo(1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double p = parameter_;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    double u1 = 0.0, u2 = 0.0;
    switch (family_) {
      case Family::independence:
        u1 = open_uniform(rng);
        u2 = open_uniform(rng);
        break;
      case Family::gumbel: {
        // positive stable with Laplace transform exp(-s^alpha)
        const double alpha = 1.0 / p;
        double v = 1.0;
        if (alpha < 1.0) {
          const double th = std::numbers::pi * open_uniform(rng);
          const double w = expo(rng);
          v = std::sin(alpha * th) / std::pow(std::sin(th), 1.0 / alpha) *
              std::pow(std::sin((1.0 - alpha) * th) / w, (1.0 - alpha) / alpha);
        }
        u1 = std::exp(-std::pow(expo(rng) / v, alpha));
        u2 = std::exp(-std::pow(expo(rng) / v, alpha));
        break;
      }
      case Family::clayton: {
        std::gamma_distribution<double> gam(1.0 / p, 1.0);
        const double v = gam(rng);
        u1 = std::pow(1.0 + expo(rng) / v, -1.0 / p);
        u2 = std::pow(1.0 + expo(rng) / v, -1.0 / p);
        break;
      }
      case Family::frank: {
        u1 = open_uniform(rng);
        const double q = open_uniform(rng);
        const double a = std::exp(-p * u1);
        const double k = std::expm1(-p);
        const double x = q * k / (q + a * (1.0 - q));
        u2 = -std::log1p(x) / p;
        break;
      }
      case Family::gaussian: {
        const boost::math::normal_distribution<double> nd;
        const double z1 = gauss(rng), z2 = gauss(rng);
        u1 = boost::math::cdf(nd, z1);
        u2 = boost::math::cdf(nd, p * z1 + std::sqrt(1.0 - p * p) * z2);
        break;
      }
      case Family::student_t4: {
        const boost::math::students_t_distribution<double> t(kT4Dof);
        std::chi_squared_distribution<double> chi(kT4Dof);
        const double z1 = gauss(rng), z2 = gauss(rng);
        const double s = std::sqrt(kT4Dof / chi(rng));
        u1 = boost::math::cdf(t, s * z1);
        u2 = boost::math::cdf(t, s * (p * z1 + std::sqrt(1.0 - p * p) * z2));
        break;
      }
      case Family::ev_from_a:
        u1 = open_uniform(rng);
        u2 = ev_conditional_quantile(*pickands_, u1, open_uniform(rng));
        break;
    }
    out(i, 0) = interior(u1);
    out(i, 1) = interior(u2);
  }
  return out;
}

Eigen::MatrixXd CopulaFamily::sample(std::size_t n, std::uint64_t seed) const {
  Rng rng = stream_rng(seed, 0);
  return sample(n, rng);
}

ItauFit fit_gumbel_itau(const Eigen::MatrixXd& sample) {
  if (sample.cols() != 2) throw std::invalid_argument("fit_gumbel_itau: requires d = 2");
  if (sample.rows() < 3) throw std::invalid_argument("fit_gumbel_itau: requires n >= 3");
  const TauJackknife jk = kendall_tau_jackknife(sample);
  if (!(jk.tau > 0.0)) throw NumericError("fit_gumbel_itau: Kendall's tau <= 0 cannot be represented");
  if (!(jk.tau < 1.0)) throw NumericError("fit_gumbel_itau: Kendall's tau = 1 (comonotone data)");
  ItauFit fit;
  fit.tau = jk.tau;
  fit.theta = 1.0 / (1.0 - jk.tau);
  fit.std_error = std::sqrt(jk.variance) / ((1.0 - jk.tau) * (1.0 - jk.tau));
  return fit;
}

}  // namespace evdep
