#pragma once

#include "evdep/data.hpp"
#include "evdep/empirical_copula.hpp"
#include "evdep/registry.hpp"
#include "evdep/report.hpp"

#include <Eigen/Core>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace evdep {

struct MaxStabConfig {
  std::vector<double> r_values{3.0, 4.0, 5.0};
  MultiplierConfig multiplier;
  std::optional<std::vector<double>> tail_threshold;  // restrict to [t, 1]
};

// sqrt(n) [ {C_n(u^{1/r})}^r - C_n(u) ].
double d_process(const EmpiricalCopula& c, double r, std::span<const double> u);

// sum_r (1/n) sum_i D_r(U_i)^2 over pseudo-observations in the tail region.
double statistic_t(const EmpiricalCopula& c, const MaxStabConfig& cfg);

// Max-stability test with multiplier-bootstrap p-value. When a tail
// threshold is set the report is marked heuristic.
TestReport test_maxstab(const PseudoObs& pobs, const MaxStabConfig& cfg);

// Heuristic domain-of-attraction check: block maxima of length m, re-ranked,
// then the named inner test. Input must be tie-free.
TestReport test_mda_blockmax(const DataMatrix& data, std::size_t block_length,
                             const std::string& inner_test, const TestOptions& opts);

}  // namespace evdep
