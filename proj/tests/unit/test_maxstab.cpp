#include "evdep/error.hpp"
#include "evdep/kendall_tests.hpp"
#include "evdep/maxstab.hpp"
#include "evdep/ranks.hpp"
#include "evdep/simulation.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>

using namespace evdep;

namespace {

PseudoObs sample_pobs(const CopulaFamily& f, std::size_t n, std::uint64_t seed) {
  return pseudo_observations(f.sample(n, seed), TiesPolicy{});
}

double brute_statistic(const Eigen::MatrixXd& u, const std::vector<double>& rs,
                       const std::optional<std::vector<double>>& t = std::nullopt) {
  const double n = static_cast<double>(u.rows());
  double total = 0.0;
  for (double r : rs)
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      std::vector<double> p, q;
      bool in = true;
      for (Eigen::Index j = 0; j < u.cols(); ++j) {
        p.push_back(u(i, j));
        q.push_back(std::pow(u(i, j), 1.0 / r));
        if (t && u(i, j) < (*t)[static_cast<std::size_t>(j)]) in = false;
      }
      if (!in) continue;
      const double d = std::sqrt(n) * (std::pow(oracle::ecdf(u, q), r) - oracle::ecdf(u, p));
      total += d * d / n;
    }
  return total;
}

}  // namespace

TEST(DProcess, HandCount) {
  Eigen::MatrixXd u(3, 2);
  u << 0.25, 0.5, 0.5, 0.25, 0.75, 0.75;
  const EmpiricalCopula c{PseudoObs(u)};
  const std::array<double, 2> p{0.5625, 0.5625};
  EXPECT_NEAR(d_process(c, 2.0, p), std::sqrt(3.0) / 3.0, 1e-15);
  const std::array<double, 2> one{1.0, 1.0};
  EXPECT_EQ(d_process(c, 3.0, one), 0.0);
  const std::array<double, 2> low{0.01, 0.2};
  EXPECT_EQ(d_process(c, 3.0, low), 0.0);
  EXPECT_THROW(d_process(c, 1.0, p), std::invalid_argument);
}

TEST(StatisticT, MatchesDoubleLoop) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const PseudoObs u = pseudo_observations(oracle::random_matrix(20 + 4 * static_cast<Eigen::Index>(s), 2 + s % 2, s), TiesPolicy{});
    const EmpiricalCopula c(u);
    MaxStabConfig cfg;
    EXPECT_NEAR(statistic_t(c, cfg), brute_statistic(u.values(), cfg.r_values), 1e-12);
    cfg.r_values = {1.5, 7.5};
    EXPECT_NEAR(statistic_t(c, cfg), brute_statistic(u.values(), cfg.r_values), 1e-12);
    cfg.tail_threshold = std::vector<double>(static_cast<std::size_t>(u.cols()), 0.4);
    EXPECT_NEAR(statistic_t(c, cfg), brute_statistic(u.values(), cfg.r_values, cfg.tail_threshold), 1e-12);
  }
}

TEST(StatisticT, InvariantUnderTransforms) {
  const Eigen::MatrixXd x = oracle::random_matrix(70, 2, 3);
  Eigen::MatrixXd y = x;
  y.col(0) = x.col(0).array().exp();
  const MaxStabConfig cfg;
  EXPECT_EQ(statistic_t(EmpiricalCopula(pseudo_observations(x, TiesPolicy{})), cfg),
            statistic_t(EmpiricalCopula(pseudo_observations(y, TiesPolicy{})), cfg));
}

TEST(StatisticT, ConfigErrors) {
  const EmpiricalCopula c(pseudo_observations(oracle::random_matrix(20, 2, 4), TiesPolicy{}));
  MaxStabConfig cfg;
  cfg.r_values.clear();
  EXPECT_THROW(statistic_t(c, cfg), std::invalid_argument);
  cfg.r_values = {0.5};
  EXPECT_THROW(statistic_t(c, cfg), std::invalid_argument);
}

TEST(AnalyticMaxStability, GumbelExactClaytonNot) {
  const CopulaFamily g(Family::gumbel, 2.5), cl(Family::clayton, 2.0);
  double gap_g = 0.0, gap_c = 0.0;
  for (int a = 1; a <= 20; ++a)
    for (int b = 1; b <= 20; ++b) {
      const double u = a / 21.0, v = b / 21.0, r = 3.0;
      gap_g = std::max(gap_g, std::abs(std::pow(g.cdf(std::pow(u, 1 / r), std::pow(v, 1 / r)), r) - g.cdf(u, v)));
      gap_c = std::max(gap_c, std::abs(std::pow(cl.cdf(std::pow(u, 1 / r), std::pow(v, 1 / r)), r) - cl.cdf(u, v)));
    }
  EXPECT_LT(gap_g, 1e-12);
  EXPECT_GT(gap_c, 0.01);
}

TEST(TestMaxstab, ReproducibleAndBounded) {
  const PseudoObs u = sample_pobs(CopulaFamily(Family::gumbel, 2.0), 100, 5);
  MaxStabConfig cfg;
  cfg.multiplier.replicates = 99;
  cfg.multiplier.seed = 3;
  const TestReport a = test_maxstab(u, cfg), b = test_maxstab(u, cfg);
  EXPECT_EQ(a.p_value, b.p_value);
  EXPECT_EQ(a.statistic, b.statistic);
  EXPECT_GE(a.p_value, 1.0 / 100.0);
  EXPECT_LE(a.p_value, 1.0);
  EXPECT_EQ(a.replicates, 99u);
  EXPECT_FALSE(a.heuristic);
  EXPECT_EQ(a.method, "maxstab");
}

TEST(TestMaxstab, TailVariantIsHeuristic) {
  const PseudoObs u = sample_pobs(CopulaFamily(Family::gumbel, 2.0), 200, 6);
  MaxStabConfig cfg;
  cfg.multiplier.replicates = 50;
  cfg.tail_threshold = std::vector<double>{0.5, 0.5};
  const TestReport r = test_maxstab(u, cfg);
  EXPECT_TRUE(r.heuristic);
  EXPECT_LT(r.extras.at("points"), 200.0);
  cfg.tail_threshold = std::vector<double>{0.999, 0.999};
  EXPECT_THROW(test_maxstab(u, cfg), NumericError);
}

TEST(TestMaxstab, RejectsClayton) {
  const PseudoObs u = sample_pobs(CopulaFamily::from_tau(Family::clayton, 0.5), 200, 7);
  MaxStabConfig cfg;
  cfg.multiplier.replicates = 250;
  EXPECT_LT(test_maxstab(u, cfg).p_value, 0.05);
}

TEST(TestMaxstab, WorksInThreeDimensions) {
  const PseudoObs u = pseudo_observations(oracle::random_matrix(60, 3, 8), TiesPolicy{});
  MaxStabConfig cfg;
  cfg.multiplier.replicates = 50;
  const TestReport r = test_maxstab(u, cfg);
  EXPECT_GT(r.p_value, 0.0);
}

TEST(MdaBlockmax, LengthOneMatchesInnerTest) {
  const Eigen::MatrixXd x = CopulaFamily(Family::gumbel, 1.5).sample(120, 9);
  TestOptions opts;
  opts.replicates = 60;
  const TestReport inner = run_named_test("maxstab", pseudo_observations(x, TiesPolicy{}), opts);
  const TestReport r = test_mda_blockmax(DataMatrix(x), 1, "maxstab", opts);
  EXPECT_EQ(r.statistic, inner.statistic);
  EXPECT_EQ(r.p_value, inner.p_value);
  EXPECT_TRUE(r.heuristic);
  EXPECT_EQ(r.extras.at("block_length"), 1.0);
  EXPECT_EQ(r.extras.at("blocks"), 120.0);
  EXPECT_EQ(r.method, "mda_blockmax/maxstab");
}

TEST(MdaBlockmax, Errors) {
  const Eigen::MatrixXd x = oracle::random_matrix(50, 2, 10);
  EXPECT_THROW(test_mda_blockmax(DataMatrix(x), 2, "nope", TestOptions{}), std::invalid_argument);
  EXPECT_THROW(test_mda_blockmax(DataMatrix(oracle::random_matrix(50, 2, 11, 5)), 1, "s2n", TestOptions{}), DataError);
}

TEST(MdaBlockmax, ClaytonMaximaLookExtreme) {
  const CopulaFamily cl = CopulaFamily::from_tau(Family::clayton, 0.5);
  int raw = 0, maxima = 0;
  for (int r = 0; r < 40; ++r) {
    const Eigen::MatrixXd x = cl.sample(4000, 300 + r);
    if (test_s2n(x.topRows(200)).p_value <= 0.05) ++raw;
    if (test_mda_blockmax(DataMatrix(x), 20, "s2n", TestOptions{}).p_value <= 0.05) ++maxima;
  }
  EXPECT_GE(raw, 30);
  EXPECT_LE(maxima, 10);
}
