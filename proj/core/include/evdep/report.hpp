#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace evdep {

struct TestReport {
  std::string method;
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t replicates = 0;  // 0 for asymptotic tests
  std::optional<std::uint64_t> seed;
  bool heuristic = false;
  std::map<std::string, double> extras;
};

// (1 + #{replicate >= observed}) / (B + 1).
double corrected_p_value(double observed, const double* replicates, std::size_t count);

// Two-sided standard normal tail probability of z.
double two_sided_normal_p(double z);

}  // namespace evdep
