#pragma once

#include "evdep/data.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <vector>

namespace evdep {

enum class MultiplierLaw { normal, rademacher };

struct MultiplierConfig {
  std::size_t replicates = 1000;
  MultiplierLaw law = MultiplierLaw::normal;
  double bandwidth = 0.0;  // <= 0 selects n^{-1/2}
  std::uint64_t seed = 0;
};

// Empirical c.d.f. of a set of pseudo-observations. Bivariate samples get a
// cumulative count table so eval() is O(log n); other dimensions fall back to
// a linear scan.
class EmpiricalCopula {
 public:
  explicit EmpiricalCopula(PseudoObs pobs);

  const PseudoObs& pobs() const noexcept { return pobs_; }
  Eigen::Index size() const noexcept { return pobs_.rows(); }
  Eigen::Index dim() const noexcept { return pobs_.cols(); }

  double eval(std::span<const double> u) const;
  double eval(const Eigen::VectorXd& u) const { return eval(std::span<const double>(u.data(), u.size())); }
  double eval(double u1, double u2) const;

  // Integer count of pseudo-observations <= u; eval() is count()/n.
  std::size_t count(std::span<const double> u) const;

  // [C_n(u + h e_j) - C_n(u - h e_j)] / (2h) with the shifted argument
  // clipped to [0,1]; the result is clipped into [0,1].
  double partial_derivative(std::size_t j, std::span<const double> u, double h) const;

  double default_bandwidth() const;

 private:
  std::size_t count_table(double u1, double u2) const;

  PseudoObs pobs_;
  // bivariate fast path
  std::vector<double> sorted1_, sorted2_;
  std::vector<std::uint32_t> table_;  // (k1+1) x (k2+1) cumulative counts
  std::size_t stride_ = 0;
};

// Multipliers for B replicates as an n x B matrix. Column b is drawn from
// its own stream derived from (seed, b).
Eigen::MatrixXd draw_multipliers(Eigen::Index n, const MultiplierConfig& cfg);

// Per-observation influence weights of the derivative-corrected multiplier
// process at each evaluation point (rows = points, cols = observations):
// w_i(u) = 1(U_i <= u) - C_n(u) - sum_j dC_n/du_j(u) [1(U_ij <= u_j) - C_n(u^(j))].
// Replicate b of the process is n^{-1/2} * W * Z.col(b).
Eigen::MatrixXd multiplier_weights(const EmpiricalCopula& c, const Eigen::MatrixXd& points,
                                   double bandwidth);

// B x |points| matrix of replicate process values. `points` holds one point
// per row.
Eigen::MatrixXd multiplier_replicates(const EmpiricalCopula& c, const Eigen::MatrixXd& points,
                                      const MultiplierConfig& cfg);

// Same with caller-supplied multipliers (n x B).
Eigen::MatrixXd multiplier_replicates(const EmpiricalCopula& c, const Eigen::MatrixXd& points,
                                      const Eigen::MatrixXd& multipliers, double bandwidth);

}  // namespace evdep
