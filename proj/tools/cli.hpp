#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace evdep::cli {

enum ExitCode : int { ok = 0, usage = 1, data_error = 2, numeric_failure = 3 };

// Runs one command line. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// R-style six-number summary with type-7 quantiles; NaN entries are skipped.
struct Summary {
  double min = 0.0, q1 = 0.0, median = 0.0, mean = 0.0, q3 = 0.0, max = 0.0;
  std::size_t count = 0;
};
Summary summarize(std::vector<double> values);
double quantile7(const std::vector<double>& sorted, double p);

}  // namespace evdep::cli
