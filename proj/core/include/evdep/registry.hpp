#pragma once

#include "evdep/data.hpp"
#include "evdep/empirical_copula.hpp"
#include "evdep/report.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace evdep {

// Options shared by every test reachable by name.
struct TestOptions {
  std::size_t replicates = 1000;
  std::uint64_t seed = 0;
  std::vector<double> r_values{3.0, 4.0, 5.0};
  std::optional<std::vector<double>> threshold;
  MultiplierLaw law = MultiplierLaw::normal;
  std::size_t interior_knots = 10;
};

// Known identifiers: s2n, s3n, maxstab, pickands_a, aplot_resid.
bool is_known_test(const std::string& id);
const std::vector<std::string>& known_tests();

// Runs the named test on continuous pseudo-observations.
TestReport run_named_test(const std::string& id, const PseudoObs& pobs, const TestOptions& opts);

}  // namespace evdep
