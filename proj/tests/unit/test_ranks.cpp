#include "evdep/error.hpp"
#include "evdep/ranks.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace evdep;

namespace {

Eigen::MatrixXd column(std::initializer_list<double> v) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(v.size()), 1);
  Eigen::Index i = 0;
  for (double x : v) m(i++, 0) = x;
  return m;
}

std::vector<double> pobs_column(const Eigen::MatrixXd& m, TiesKind kind, std::uint64_t seed = 0) {
  const PseudoObs u = pseudo_observations(m, TiesPolicy{kind, seed});
  return std::vector<double>(u.values().data(), u.values().data() + u.rows());
}

}  // namespace

TEST(PseudoObservations, NoTiesAnyPolicy) {
  const auto x = column({3.2, 1.1, 5.0});
  for (auto k : {TiesKind::average, TiesKind::random, TiesKind::max})
    EXPECT_EQ(pobs_column(x, k), (std::vector<double>{0.5, 0.25, 0.75}));
}

TEST(PseudoObservations, AverageTies) {
  EXPECT_EQ(pobs_column(column({2, 2, 5}), TiesKind::average), (std::vector<double>{0.375, 0.375, 0.75}));
}

TEST(PseudoObservations, MaxTies) {
  EXPECT_EQ(pobs_column(column({2, 2, 5}), TiesKind::max), (std::vector<double>{0.5, 0.5, 0.75}));
}

TEST(PseudoObservations, RandomTiesArePermutationOfRanks) {
  const Eigen::MatrixXd x = oracle::random_matrix(60, 2, 5, 7);
  const PseudoObs u = pseudo_observations(x, TiesPolicy{TiesKind::random, 42});
  for (Eigen::Index j = 0; j < 2; ++j) {
    std::vector<double> v(u.values().col(j).data(), u.values().col(j).data() + 60);
    std::sort(v.begin(), v.end());
    for (int i = 0; i < 60; ++i) EXPECT_EQ(v[static_cast<std::size_t>(i)], (i + 1) / 61.0);
  }
}

TEST(PseudoObservations, RandomTiesRespectOrderBetweenDistinctValues) {
  const Eigen::MatrixXd x = oracle::random_matrix(80, 2, 6, 5);
  const PseudoObs u = pseudo_observations(x, TiesPolicy{TiesKind::random, 1});
  for (Eigen::Index j = 0; j < 2; ++j)
    for (Eigen::Index a = 0; a < 80; ++a)
      for (Eigen::Index b = 0; b < 80; ++b)
        if (x(a, j) < x(b, j)) EXPECT_LT(u(a, j), u(b, j));
}

TEST(PseudoObservations, RandomTiesReproducibleBySeed) {
  const Eigen::MatrixXd x = oracle::random_matrix(100, 2, 8, 10);
  const auto a = pseudo_observations(x, TiesPolicy{TiesKind::random, 9}).values();
  const auto b = pseudo_observations(x, TiesPolicy{TiesKind::random, 9}).values();
  const auto c = pseudo_observations(x, TiesPolicy{TiesKind::random, 10}).values();
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(PseudoObservations, InvariantUnderIncreasingTransforms) {
  const Eigen::MatrixXd x = oracle::random_matrix(50, 2, 11);
  const auto base = pseudo_observations(x, TiesPolicy{}).values();
  Eigen::MatrixXd y = x;
  y.col(0) = x.col(0).array().exp();
  y.col(1) = x.col(1).array().cube() * 3.0 - 7.0;
  EXPECT_EQ(pseudo_observations(y, TiesPolicy{}).values(), base);
}

TEST(PseudoObservations, MatchesBruteForceRanks) {
  const Eigen::MatrixXd x = oracle::random_matrix(40, 3, 12);
  EXPECT_EQ(pseudo_observations(x, TiesPolicy{}).values(), oracle::ranks_scaled(x));
}

TEST(PseudoObservations, EntriesInsideUnitInterval) {
  const Eigen::MatrixXd x = oracle::random_matrix(30, 2, 13, 4);
  for (auto k : {TiesKind::average, TiesKind::random, TiesKind::max}) {
    const auto u = pseudo_observations(x, TiesPolicy{k, 3}).values();
    EXPECT_GE(u.minCoeff(), 1.0 / 31.0);
    EXPECT_LE(u.maxCoeff(), 30.0 / 31.0);
  }
}

TEST(PseudoObservations, RejectsNonFinite) {
  Eigen::MatrixXd x = oracle::random_matrix(5, 2, 1);
  x(3, 1) = std::nan("");
  EXPECT_THROW(pseudo_observations(x, TiesPolicy{}), DataError);
  EXPECT_THROW(DataMatrix{x}, DataError);
}

TEST(PseudoObservations, NeedsTwoRows) {
  EXPECT_THROW(pseudo_observations(Eigen::MatrixXd::Ones(1, 2), TiesPolicy{}), std::invalid_argument);
}

TEST(BlockMaxima, ConsecutiveBlocks) {
  const DataMatrix d(column({1, 4, 2, 3, 5, 0}));
  EXPECT_EQ(block_maxima(d, 2).values(), column({4, 3, 5}));
  EXPECT_EQ(block_maxima(d, 1).values(), d.values());
}

TEST(BlockMaxima, RemainderDropped) {
  const DataMatrix d(column({1, 2, 3, 4, 5}));
  EXPECT_EQ(block_maxima(d, 2).values(), column({2, 4}));
}

TEST(BlockMaxima, LengthIsFloor) {
  const DataMatrix d(oracle::random_matrix(103, 2, 3));
  for (std::size_t m : {1u, 2u, 7u, 50u, 103u}) EXPECT_EQ(block_maxima(d, m).rows(), static_cast<Eigen::Index>(103 / m));
}

TEST(BlockMaxima, Errors) {
  const DataMatrix d(column({1, 2, 3}));
  EXPECT_THROW(block_maxima(d, 4), std::invalid_argument);
  EXPECT_THROW(block_maxima(d, 0), std::invalid_argument);
}

TEST(BlockMaxima, ByGroup) {
  Eigen::MatrixXd a(2, 2);
  a << 1, 9, 3, 2;
  EXPECT_EQ(block_maxima_by_group(DataMatrix(a), {"a", "a"}).values(), (Eigen::MatrixXd(1, 2) << 3, 9).finished());
  Eigen::MatrixXd b(3, 2);
  b << 1, 1, 2, 0, 0, 2;
  EXPECT_EQ(block_maxima_by_group(DataMatrix(b), {"a", "b", "a"}).values(),
            (Eigen::MatrixXd(2, 2) << 1, 2, 2, 0).finished());
  EXPECT_EQ(block_maxima_by_group(DataMatrix(b), {"x", "y", "z"}).values(), b);
  EXPECT_THROW(block_maxima_by_group(DataMatrix(b), {}), std::invalid_argument);
}

TEST(KendallTau, SmallCases) {
  EXPECT_DOUBLE_EQ(kendall_tau((Eigen::MatrixXd(3, 2) << 1, 1, 2, 2, 3, 3).finished()), 1.0);
  EXPECT_DOUBLE_EQ(kendall_tau((Eigen::MatrixXd(3, 2) << 1, 3, 2, 2, 3, 1).finished()), -1.0);
  EXPECT_DOUBLE_EQ(kendall_tau((Eigen::MatrixXd(3, 2) << 1, 2, 2, 1, 3, 3).finished()), 1.0 / 3.0);
}

TEST(KendallTau, FastAgreesExactly) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const Eigen::MatrixXd x = oracle::random_matrix(20 + static_cast<Eigen::Index>(s) * 7, 2, s);
    EXPECT_EQ(kendall_tau_fast(x), kendall_tau(x));
    EXPECT_NEAR(kendall_tau(x), oracle::tau_pairs(x), 1e-15);
  }
}

TEST(KendallTau, SymmetryAndSignFlip) {
  const Eigen::MatrixXd x = oracle::random_matrix(60, 2, 21);
  Eigen::MatrixXd swapped(60, 2), negated = x;
  swapped << x.col(1), x.col(0);
  negated.col(1) *= -1.0;
  EXPECT_DOUBLE_EQ(kendall_tau(swapped), kendall_tau(x));
  EXPECT_DOUBLE_EQ(kendall_tau(negated), -kendall_tau(x));
}

TEST(KendallTau, JackknifeMatchesDeleteOne) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Eigen::MatrixXd x = oracle::random_matrix(25, 2, 100 + s);
    const TauJackknife jk = kendall_tau_jackknife(x);
    EXPECT_NEAR(jk.tau, oracle::tau_pairs(x), 1e-14);
    EXPECT_NEAR(jk.variance, oracle::jackknife(x, oracle::tau_pairs), 1e-13);
  }
}

TEST(TiesTemplate, SortedMaxRanks) {
  Eigen::MatrixXd x(4, 2);
  x << 5, 1, 2, 1, 2, 3, 9, 1;
  const auto t = ties_template(x);
  EXPECT_EQ(t[0], (std::vector<double>{2, 2, 3, 4}));
  EXPECT_EQ(t[1], (std::vector<double>{3, 3, 3, 4}));
}

TEST(TiesTemplate, ImposeCopiesPatternAndKeepsOrder) {
  const Eigen::MatrixXd ref = oracle::random_matrix(50, 2, 3, 6);
  const Eigen::MatrixXd x = oracle::random_matrix(50, 2, 4);
  const auto tmpl = ties_template(ref);
  const Eigen::MatrixXd y = impose_ties(x, tmpl);
  for (Eigen::Index j = 0; j < 2; ++j) {
    std::vector<double> v(y.col(j).data(), y.col(j).data() + 50);
    std::sort(v.begin(), v.end());
    EXPECT_EQ(v, tmpl[static_cast<std::size_t>(j)]);
    for (Eigen::Index a = 0; a < 50; ++a)
      for (Eigen::Index b = 0; b < 50; ++b)
        if (x(a, j) < x(b, j)) EXPECT_LE(y(a, j), y(b, j));
  }
}

TEST(TiesTemplate, NoTiesTemplateIsRanks) {
  const Eigen::MatrixXd x = oracle::random_matrix(30, 2, 5);
  const Eigen::MatrixXd y = impose_ties(x, ties_template(oracle::random_matrix(30, 2, 6)));
  EXPECT_EQ(y / 31.0, oracle::ranks_scaled(x));
}

TEST(TiesTemplate, SizeMismatch) {
  EXPECT_THROW(impose_ties(oracle::random_matrix(10, 2, 1), ties_template(oracle::random_matrix(11, 2, 2))),
               std::invalid_argument);
}
