#include "evdep/empirical_copula.hpp"
#include "evdep/ranks.hpp"
#include "evdep/simulation.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

using namespace evdep;

namespace {

PseudoObs three_points() {
  Eigen::MatrixXd u(3, 2);
  u << 0.25, 0.5, 0.5, 0.25, 0.75, 0.75;
  return PseudoObs(u);
}

PseudoObs random_pobs(Eigen::Index n, Eigen::Index d, std::uint64_t seed) {
  return pseudo_observations(oracle::random_matrix(n, d, seed), TiesPolicy{});
}

}  // namespace

TEST(EmpiricalCopulaEval, HandCount) {
  const EmpiricalCopula c(three_points());
  EXPECT_DOUBLE_EQ(c.eval(0.5, 0.5), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(c.eval(1.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(c.eval(0.0, 0.9), 0.0);
  EXPECT_DOUBLE_EQ(c.eval(0.24, 1.0), 0.0);
}

TEST(EmpiricalCopulaEval, MatchesDoubleLoopBivariate) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 100; ++rep) {
    const Eigen::Index n = 2 + rep * 2;
    const PseudoObs u = pseudo_observations(oracle::random_matrix(n, 2, 1000 + rep, rep % 3 ? 0 : 9),
                                            TiesPolicy{TiesKind::average, 0});
    const EmpiricalCopula c(u);
    for (int k = 0; k < 20; ++k) {
      std::vector<double> p{unif(rng), unif(rng)};
      if (k == 0) p = {u(0, 0), u(0, 1)};  // a point on the sample itself
      EXPECT_EQ(c.count(p), static_cast<std::size_t>(oracle::count_below(u.values(), p)));
      EXPECT_EQ(c.eval(p[0], p[1]), oracle::ecdf(u.values(), p));
    }
  }
}

TEST(EmpiricalCopulaEval, MatchesDoubleLoopHigherDimension) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    const PseudoObs u = random_pobs(50, 3 + rep % 2, 50 + rep);
    const EmpiricalCopula c(u);
    for (int k = 0; k < 20; ++k) {
      std::vector<double> p;
      for (Eigen::Index j = 0; j < u.cols(); ++j) p.push_back(unif(rng));
      EXPECT_EQ(c.eval(p), oracle::ecdf(u.values(), p));
    }
  }
}

TEST(EmpiricalCopulaEval, MonotoneAndIntegerValued) {
  const PseudoObs u = random_pobs(97, 2, 3);
  const EmpiricalCopula c(u);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    const double a = unif(rng), b = unif(rng);
    const double a2 = a + (1 - a) * unif(rng), b2 = b + (1 - b) * unif(rng);
    EXPECT_LE(c.eval(a, b), c.eval(a2, b2));
    const double scaled = c.eval(a, b) * 97.0;
    EXPECT_NEAR(scaled, std::round(scaled), 1e-9);
  }
  EXPECT_EQ(c.eval(1.0 / 98.0 - 1e-12, 1.0), 0.0);
}

TEST(EmpiricalCopulaEval, DimensionMismatch) {
  const EmpiricalCopula c(three_points());
  EXPECT_THROW(c.eval(std::vector<double>{0.5, 0.5, 0.5}), std::invalid_argument);
}

TEST(PartialDerivative, AlwaysInUnitInterval) {
  const PseudoObs u = random_pobs(60, 2, 5);
  const EmpiricalCopula c(u);
  for (double a = 0.0; a <= 1.0; a += 0.05)
    for (double b = 0.0; b <= 1.0; b += 0.05)
      for (std::size_t j = 0; j < 2; ++j) {
        const std::array<double, 2> p{a, b};
        const double d = c.partial_derivative(j, p, c.default_bandwidth());
        EXPECT_GE(d, 0.0);
        EXPECT_LE(d, 1.0);
      }
}

TEST(PartialDerivative, ZeroWhereCopulaVanishes) {
  const PseudoObs u = random_pobs(100, 2, 6);
  const EmpiricalCopula c(u);
  const std::array<double, 2> p{0.05, 0.001};
  EXPECT_EQ(c.partial_derivative(0, p, 0.1), 0.0);
}

TEST(PartialDerivative, CentralDifferenceOverTwoH) {
  const PseudoObs u = random_pobs(80, 2, 7);
  const EmpiricalCopula c(u);
  const double h = 0.1;
  for (double a : {0.0, 0.04, 0.5, 0.97, 1.0})
    for (double b : {0.2, 1.0}) {
      const std::vector<double> hi{std::min(a + h, 1.0), b}, lo{std::max(a - h, 0.0), b};
      const double expected = std::clamp((oracle::ecdf(u.values(), hi) - oracle::ecdf(u.values(), lo)) / (2 * h), 0.0, 1.0);
      const std::array<double, 2> p{a, b};
      EXPECT_DOUBLE_EQ(c.partial_derivative(0, p, h), expected) << a << ',' << b;
    }
}

TEST(PartialDerivative, HalfSlopeAtUpperFace) {
  const PseudoObs u = pseudo_observations(CopulaFamily(Family::independence, 0).sample(5000, 7), TiesPolicy{});
  const EmpiricalCopula c(u);
  const std::array<double, 2> p{1.0, 1.0};
  EXPECT_NEAR(c.partial_derivative(0, p, c.default_bandwidth()), 0.5, 0.01);
}

TEST(PartialDerivative, ApproximatesIndependenceMargin) {
  const PseudoObs u = pseudo_observations(CopulaFamily(Family::independence, 0).sample(20000, 8), TiesPolicy{});
  const EmpiricalCopula c(u);
  for (double a : {0.2, 0.5, 0.8})
    for (double b : {0.3, 0.6, 0.9}) {
      const std::array<double, 2> p{a, b};
      EXPECT_NEAR(c.partial_derivative(0, p, 0.05), b, 0.05);
      EXPECT_NEAR(c.partial_derivative(1, p, 0.05), a, 0.05);
    }
}

TEST(MultiplierReplicates, MatchesDirectFormula) {
  const PseudoObs u = random_pobs(40, 2, 9);
  const EmpiricalCopula c(u);
  const double h = c.default_bandwidth();
  Eigen::MatrixXd pts(5, 2);
  pts << 0.3, 0.4, 0.5, 0.5, 0.9, 0.2, 1.0, 0.7, 0.1, 0.95;
  const Eigen::MatrixXd z = draw_multipliers(40, MultiplierConfig{3, MultiplierLaw::normal, 0.0, 11});
  const Eigen::MatrixXd rep = multiplier_replicates(c, pts, z, h);
  ASSERT_EQ(rep.rows(), 3);
  ASSERT_EQ(rep.cols(), 5);
  const double n = 40.0;
  auto alpha = [&](Eigen::Index b, const std::vector<double>& p) {
    const double cn = oracle::ecdf(u.values(), p);
    double s = 0.0;
    for (Eigen::Index i = 0; i < 40; ++i) {
      const double ind = (u(i, 0) <= p[0] && u(i, 1) <= p[1]) ? 1.0 : 0.0;
      s += z(i, b) * (ind - cn);
    }
    return s / std::sqrt(n);
  };
  for (Eigen::Index b = 0; b < 3; ++b)
    for (Eigen::Index k = 0; k < 5; ++k) {
      const std::vector<double> p{pts(k, 0), pts(k, 1)};
      double expected = alpha(b, p);
      for (std::size_t j = 0; j < 2; ++j) {
        std::vector<double> pj{1.0, 1.0};
        pj[j] = p[j];
        const std::array<double, 2> q{p[0], p[1]};
        expected -= c.partial_derivative(j, q, h) * alpha(b, pj);
      }
      EXPECT_NEAR(rep(b, k), expected, 1e-12);
    }
}

TEST(MultiplierReplicates, ZeroMultipliersGiveZero) {
  const PseudoObs u = random_pobs(30, 2, 12);
  const EmpiricalCopula c(u);
  const Eigen::MatrixXd rep = multiplier_replicates(c, u.values(), Eigen::MatrixXd::Zero(30, 4), 0.1);
  EXPECT_EQ(rep.cwiseAbs().maxCoeff(), 0.0);
}

TEST(MultiplierReplicates, DeterministicGivenSeed) {
  const PseudoObs u = random_pobs(50, 2, 13);
  const EmpiricalCopula c(u);
  MultiplierConfig cfg{20, MultiplierLaw::rademacher, 0.0, 5};
  const Eigen::MatrixXd a = multiplier_replicates(c, u.values(), cfg);
  EXPECT_EQ(a, multiplier_replicates(c, u.values(), cfg));
  EXPECT_TRUE(a.allFinite());
  cfg.seed = 6;
  EXPECT_NE(a, multiplier_replicates(c, u.values(), cfg));
}

TEST(MultiplierReplicates, StreamsArePerReplicate) {
  const Eigen::MatrixXd a = draw_multipliers(10, MultiplierConfig{5, MultiplierLaw::normal, 0.0, 3});
  const Eigen::MatrixXd b = draw_multipliers(10, MultiplierConfig{8, MultiplierLaw::normal, 0.0, 3});
  EXPECT_EQ(a, b.leftCols(5));
  const Eigen::MatrixXd r = draw_multipliers(200, MultiplierConfig{2, MultiplierLaw::rademacher, 0.0, 3});
  EXPECT_TRUE((r.array().abs() == 1.0).all());
}

TEST(MultiplierReplicates, SeedsGiveSameLaw) {
  const PseudoObs u = random_pobs(80, 2, 14);
  const EmpiricalCopula c(u);
  Eigen::MatrixXd pts(1, 2);
  pts << 0.5, 0.5;
  const Eigen::MatrixXd a = multiplier_replicates(c, pts, MultiplierConfig{400, MultiplierLaw::normal, 0.0, 1});
  const Eigen::MatrixXd b = multiplier_replicates(c, pts, MultiplierConfig{400, MultiplierLaw::normal, 0.0, 2});
  std::vector<double> va(a.data(), a.data() + a.size()), vb(b.data(), b.data() + b.size());
  std::sort(vb.begin(), vb.end());
  auto ecdf_b = [&](double x) {
    return static_cast<double>(std::upper_bound(vb.begin(), vb.end(), x) - vb.begin()) / vb.size();
  };
  // two-sample KS at 1%: 1.628 * sqrt(2/400)
  EXPECT_LT(oracle::ks_cdf(va, ecdf_b), 1.628 * std::sqrt(2.0 / 400.0) + 1.0 / 400.0);
}

TEST(MultiplierReplicates, VarianceMatchesSamplingVariance) {
  const CopulaFamily indep(Family::independence, 0);
  const std::array<double, 2> p{0.5, 0.5};
  double ss = 0.0;
  for (int r = 0; r < 1000; ++r) {
    const PseudoObs u = pseudo_observations(indep.sample(200, 100 + r), TiesPolicy{});
    const double e = std::sqrt(200.0) * (EmpiricalCopula(u).eval(p) - 0.25);
    ss += e * e;
  }
  const double sampling = ss / 1000.0;
  const PseudoObs u = pseudo_observations(indep.sample(200, 99), TiesPolicy{});
  Eigen::MatrixXd pts(1, 2);
  pts << 0.5, 0.5;
  const Eigen::MatrixXd rep = multiplier_replicates(EmpiricalCopula(u), pts, MultiplierConfig{1000, MultiplierLaw::normal, 0.0, 7});
  const double boot = rep.squaredNorm() / 1000.0;
  EXPECT_GT(boot / sampling, 0.5);
  EXPECT_LT(boot / sampling, 2.0);
}

TEST(MultiplierReplicates, Errors) {
  const EmpiricalCopula c(three_points());
  EXPECT_THROW(multiplier_replicates(c, Eigen::MatrixXd(0, 2), MultiplierConfig{}), std::invalid_argument);
  EXPECT_THROW(multiplier_replicates(c, Eigen::MatrixXd::Constant(1, 2, 0.5), MultiplierConfig{0}),
               std::invalid_argument);
}
