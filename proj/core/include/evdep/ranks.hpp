#pragma once

#include "evdep/data.hpp"

#include <Eigen/Core>

#include <span>
#include <string>
#include <vector>

namespace evdep {

// Ranks of one column (1-based, possibly fractional for average ties).
std::vector<double> rank_column(std::span<const double> column, const TiesPolicy& policy);

// Column j of the result is the policy ranks of column j divided by n+1.
// Random tie-breaking draws from a single stream seeded by policy.seed.
PseudoObs pseudo_observations(const DataMatrix& data, const TiesPolicy& policy);
PseudoObs pseudo_observations(const Eigen::MatrixXd& values, const TiesPolicy& policy);

bool column_has_ties(std::span<const double> column);
bool has_ties(const Eigen::MatrixXd& values);

// Componentwise maxima over consecutive blocks of `block_length` rows; a
// trailing partial block is dropped.
DataMatrix block_maxima(const DataMatrix& data, std::size_t block_length);

// One row per distinct label (order of first appearance), componentwise max.
DataMatrix block_maxima_by_group(const DataMatrix& data, const std::vector<std::string>& labels);

// (concordant - discordant) / (n choose 2) by pair enumeration. Pairs tied in
// either coordinate count as neither.
double kendall_tau(const Eigen::MatrixXd& sample);

// Same value via Knight's merge-sort algorithm; requires no ties.
double kendall_tau_fast(const Eigen::MatrixXd& sample);

// Sorted max-ranks of each column of a reference sample: the tie pattern of
// its margins, independent of the values.
std::vector<std::vector<double>> ties_template(const Eigen::MatrixXd& reference);

// Replaces the observation of rank k in column j by template[j][k-1], so the
// margins of the result carry the reference tie pattern. The sample must be
// tie-free with as many rows as the template.
Eigen::MatrixXd impose_ties(const Eigen::MatrixXd& sample, const std::vector<std::vector<double>>& tmpl);

struct TauJackknife {
  double tau = 0.0;
  double variance = 0.0;  // jackknife variance of tau
};

// Kendall's tau with its delete-one jackknife variance, O(n^2).
TauJackknife kendall_tau_jackknife(const Eigen::MatrixXd& sample);

}  // namespace evdep
