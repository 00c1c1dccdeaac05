#pragma once

#include "evdep/data.hpp"
#include "evdep/pickands.hpp"
#include "evdep/rng.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <memory>
#include <string>

namespace evdep {

enum class Family { gumbel, clayton, frank, gaussian, student_t4, independence, ev_from_a };

Family parse_family(const std::string& name);
std::string to_string(Family family);

// A copula family with its parameter (theta for Archimedean/EV families,
// rho for the elliptical ones). ev_from_a carries a Pickands function.
class CopulaFamily {
 public:
  CopulaFamily(Family family, double parameter);
  explicit CopulaFamily(PickandsEstimate a);

  static CopulaFamily from_tau(Family family, double tau);

  Family family() const noexcept { return family_; }
  double parameter() const noexcept { return parameter_; }
  const PickandsEstimate& pickands() const { return *pickands_; }

  // Copula c.d.f.; elliptical families by adaptive quadrature.
  double cdf(double u1, double u2) const;

  Eigen::MatrixXd sample(std::size_t n, Rng& rng) const;
  Eigen::MatrixXd sample(std::size_t n, std::uint64_t seed) const;

 private:
  Family family_;
  double parameter_;
  std::shared_ptr<const PickandsEstimate> pickands_;
};

// Kendall's tau -> family parameter. Frank inverts the Debye identity by
// bisection to 1e-10.
double param_from_tau(Family family, double tau);
double tau_from_param(Family family, double parameter);

double analytic_copula(const CopulaFamily& family, double u1, double u2);

// dC/du1 for an extreme-value copula with Pickands function A.
double ev_conditional_cdf(const PickandsEstimate& a, double u, double v);

// Solves ev_conditional_cdf(a, u, v) = p for v by bisection to 1e-10.
double ev_conditional_quantile(const PickandsEstimate& a, double u, double p);

struct ItauFit {
  double theta = 0.0;
  double std_error = 0.0;
  double tau = 0.0;
};

// Gumbel-Hougaard fit by inversion of Kendall's tau; delta-method standard
// error from the jackknife variance of tau.
ItauFit fit_gumbel_itau(const Eigen::MatrixXd& sample);

}  // namespace evdep
