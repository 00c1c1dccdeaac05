#pragma once

#include "evdep/registry.hpp"
#include "evdep/simulation.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace evdep {

struct PowerSpec {
  std::vector<Family> families{Family::gumbel, Family::clayton, Family::frank, Family::gaussian,
                               Family::student_t4};
  std::vector<double> taus{0.25, 0.5, 0.75};
  std::size_t n = 200;
  std::size_t reps = 500;
  // Bootstrap-calibrated tests run on the first bootstrap_reps samples only.
  std::size_t bootstrap_reps = 200;
  double level = 0.05;
  std::size_t bootstrap_replicates = 250;
  std::uint64_t seed = 1;
  std::size_t threads = 0;  // 0 = hardware concurrency
};

struct PowerRow {
  Family family;
  double tau;
  std::string test;
  std::size_t reps = 0;
  std::size_t rejections = 0;
  double rate = 0.0;
  double mc_se = 0.0;
  double mean_seconds = 0.0;
  std::size_t failures = 0;  // runs that threw NumericError, counted as non-rejections
};

struct PowerTable {
  std::vector<PowerRow> rows;
  const PowerRow* find(Family family, double tau, const std::string& test) const;
};

bool is_bootstrap_test(const std::string& id);

// Seed of the sample drawn for (family, tau, rep); independent of the test list.
std::uint64_t power_sample_seed(std::uint64_t seed, Family family, double tau, std::size_t rep);

// Per-rep p-values, exposed for calibration checks. Entry [rep][test].
struct PowerRun {
  PowerTable table;
  std::vector<std::vector<std::vector<double>>> p_values;  // [cell][test][rep]
};

PowerRun run_power_study_detailed(const PowerSpec& spec, const std::vector<std::string>& tests);
PowerTable run_power_study(const PowerSpec& spec, const std::vector<std::string>& tests);

// Runtimes vary between runs; they are written only on request.
void write_power_csv(std::ostream& out, const PowerTable& table, bool include_timing = false);
// tau / family rows and one column per test, rates in percent.
void write_power_text(std::ostream& out, const PowerTable& table, const std::vector<std::string>& tests);

}  // namespace evdep
