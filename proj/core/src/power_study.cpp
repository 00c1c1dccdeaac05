#include "evdep/power_study.hpp"

#include "evdep/error.hpp"
#include "evdep/ranks.hpp"
#include "evdep/rng.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <exception>
#include <iomanip>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace evdep {

namespace {

struct Slot {
  double p = std::numeric_limits<double>::quiet_NaN();
  double seconds = 0.0;
  bool ran = false;
  bool failed = false;
};

// Pairwise summation keeps the mean independent of scheduling and stable.
double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

}  // namespace

const PowerRow* PowerTable::find(Family family, double tau, const std::string& test) const {
  for (const auto& r : rows)
    if (r.family == family && r.tau == tau && r.test == test) return &r;
  return nullptr;
}

bool is_bootstrap_test(const std::string& id) { return id != "s2n" && id != "s3n"; }

std::uint64_t power_sample_seed(std::uint64_t seed, Family family, double tau, std::size_t rep) {
  std::uint64_t s = derive_seed(seed, hash_string(to_string(family)));
  s = derive_seed(s, std::bit_cast<std::uint64_t>(tau));
  return derive_seed(s, rep);
}

PowerRun run_power_study_detailed(const PowerSpec& spec, const std::vector<std::string>& tests) {
  if (spec.reps < 1) throw std::invalid_argument("power study: reps must be >= 1");
  if (!(spec.level > 0.0 && spec.level < 1.0)) throw std::invalid_argument("power study: level must lie in (0,1)");
  if (tests.empty()) throw std::invalid_argument("power study: no tests requested");
  for (const auto& t : tests)
    if (!is_known_test(t)) throw std::invalid_argument("power study: unknown test '" + t + "'");

  struct Cell {
    Family family;
    double tau;
    CopulaFamily copula;
  };
  std::vector<Cell> cells;
  for (Family f : spec.families)
    for (double tau : spec.taus) cells.push_back({f, tau, CopulaFamily::from_tau(f, tau)});

  const std::size_t nt = tests.size();
  const std::size_t tasks = cells.size() * spec.reps;
  std::vector<Slot> slots(tasks * nt);

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= tasks) return;
      const std::size_t cell = task / spec.reps, rep = task % spec.reps;
      try {
        const std::uint64_t seed = power_sample_seed(spec.seed, cells[cell].family, cells[cell].tau, rep);
        const Eigen::MatrixXd x = cells[cell].copula.sample(spec.n, seed);
        const PseudoObs u = pseudo_observations(x, TiesPolicy{TiesKind::average, 0});
        for (std::size_t k = 0; k < nt; ++k) {
          if (is_bootstrap_test(tests[k]) && rep >= spec.bootstrap_reps) continue;
          TestOptions opts;
          opts.replicates = spec.bootstrap_replicates;
          opts.seed = derive_seed(seed, hash_string(tests[k]));
          Slot& s = slots[task * nt + k];
          s.ran = true;
          const auto t0 = std::chrono::steady_clock::now();
          try {
            s.p = run_named_test(tests[k], u, opts).p_value;
          } catch (const NumericError&) {
            s.failed = true;
          }
          s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(tasks);
        return;
      }
    }
  };

  std::size_t threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, tasks);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  PowerRun run;
  run.p_values.assign(cells.size(), std::vector<std::vector<double>>(nt));
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t k = 0; k < nt; ++k) {
      PowerRow row{cells[c].family, cells[c].tau, tests[k]};
      std::vector<double> secs;
      for (std::size_t rep = 0; rep < spec.reps; ++rep) {
        const Slot& s = slots[(c * spec.reps + rep) * nt + k];
        if (!s.ran) continue;
        ++row.reps;
        secs.push_back(s.seconds);
        run.p_values[c][k].push_back(s.p);
        if (s.failed)
          ++row.failures;
        else if (s.p <= spec.level)
          ++row.rejections;
      }
      if (row.reps) {
        const double r = static_cast<double>(row.reps);
        row.rate = static_cast<double>(row.rejections) / r;
        row.mc_se = std::sqrt(row.rate * (1.0 - row.rate) / r);
        row.mean_seconds = pairwise_sum(secs.data(), secs.size()) / r;
      }
      run.table.rows.push_back(std::move(row));
    }
  }
  return run;
}

PowerTable run_power_study(const PowerSpec& spec, const std::vector<std::string>& tests) {
  return run_power_study_detailed(spec, tests).table;
}

void write_power_csv(std::ostream& out, const PowerTable& table, bool include_timing) {
  out << "family,tau,test,reps,rejections,rate,mc_se,failures" << (include_timing ? ",mean_seconds\n" : "\n");
  const auto old = out.precision(10);
  for (const auto& r : table.rows) {
    out << to_string(r.family) << ',' << r.tau << ',' << r.test << ',' << r.reps << ',' << r.rejections << ','
        << r.rate << ',' << r.mc_se << ',' << r.failures;
    if (include_timing) out << ',' << r.mean_seconds;
    out << '\n';
  }
  out.precision(old);
}

void write_power_text(std::ostream& out, const PowerTable& table, const std::vector<std::string>& tests) {
  std::vector<std::pair<double, Family>> keys;
  for (const auto& r : table.rows) {
    const std::pair<double, Family> k{r.tau, r.family};
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  }
  std::stable_sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  const auto flags = out.flags();
  const auto old = out.precision();
  out << std::left << std::setw(6) << "tau" << std::setw(14) << "family";
  for (const auto& t : tests) out << std::right << std::setw(12) << t;
  out << '\n' << std::fixed << std::setprecision(1);
  for (const auto& [tau, family] : keys) {
    out << std::left << std::setw(6) << std::setprecision(2) << tau << std::setw(14) << to_string(family)
        << std::setprecision(1);
    for (const auto& t : tests) {
      const PowerRow* r = table.find(family, tau, t);
      out << std::right << std::setw(12);
      if (r && r->reps)
        out << 100.0 * r->rate;
      else
        out << "-";
    }
    out << '\n';
  }
  out.flags(flags);
  out.precision(old);
}

}  // namespace evdep
