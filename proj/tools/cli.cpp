#include "cli.hpp"

#include "evdep/evdep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace evdep::cli {

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Options {
  std::string input;
  std::optional<std::string> ties;
  std::uint64_t seed = 0;
  std::vector<std::string> tests{"s2n"};
  std::size_t B = 1000;
  std::vector<double> r_values{3.0, 4.0, 5.0};
  std::optional<std::size_t> block_length;
  std::optional<std::string> block_group;
  std::vector<double> threshold;
  std::size_t randomizations = 100;
  std::optional<std::string> out;
  double level = 0.05;
  std::vector<std::string> columns;
  std::size_t knots = 10;
  std::string law = "normal";
  // simulate / ties-experiment / power
  std::string family = "gumbel";
  std::optional<double> theta;
  std::optional<double> tau;
  std::size_t n = 1000;
  std::size_t reps = 1000;
  std::vector<std::string> families{"gumbel", "clayton", "frank", "gaussian", "student_t4"};
  std::vector<double> taus{0.25, 0.5, 0.75};
  std::size_t bootstrap_reps = 200;
  std::size_t threads = 0;
  bool timings = false;
};

// Usage problems detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format_number(double v) {
  if (std::isnan(v)) return "NA";
  std::ostringstream s;
  s << std::setprecision(10) << v;
  return s.str();
}

std::optional<std::vector<double>> threshold_of(const Options& o, Eigen::Index d) {
  if (o.threshold.empty()) return std::nullopt;
  if (static_cast<Eigen::Index>(o.threshold.size()) != d)
    throw UsageError("--threshold needs " + std::to_string(d) + " coordinates");
  for (double t : o.threshold)
    if (!(t >= 0.0 && t < 1.0)) throw UsageError("--threshold coordinates must lie in [0,1)");
  return o.threshold;
}

void check_tests(const std::vector<std::string>& tests) {
  if (tests.empty()) throw UsageError("--tests is empty");
  for (const auto& t : tests)
    if (!is_known_test(t)) throw UsageError("unknown test '" + t + "' (known: s2n,s3n,maxstab,pickands_a,aplot_resid)");
}

MultiplierLaw parse_law(const std::string& s) {
  if (s == "normal") return MultiplierLaw::normal;
  if (s == "rademacher") return MultiplierLaw::rademacher;
  throw UsageError("unknown multiplier law '" + s + "'");
}

TestOptions test_options(const Options& o, Eigen::Index d) {
  TestOptions t;
  t.replicates = o.B;
  t.seed = o.seed;
  t.r_values = o.r_values;
  t.threshold = threshold_of(o, d);
  t.law = parse_law(o.law);
  t.interior_knots = o.knots;
  return t;
}

struct Loaded {
  DataMatrix data;
  std::optional<std::size_t> blocks;
};

Loaded load(const Options& o) {
  if (o.input.empty()) throw UsageError("--input is required");
  CsvTable table = read_csv_file(o.input, o.block_group);
  DataMatrix data = table.data;
  if (!o.columns.empty()) {
    std::vector<Eigen::Index> idx;
    for (const auto& name : o.columns) {
      const auto& labels = data.labels();
      auto it = std::find(labels.begin(), labels.end(), name);
      if (it == labels.end()) throw DataError("column '" + name + "' not found in CSV header");
      idx.push_back(static_cast<Eigen::Index>(it - labels.begin()));
    }
    data = data.select_columns(idx);
  }
  if (o.block_length && o.block_group) throw UsageError("--block-length and --block-group are exclusive");
  Loaded l{data, std::nullopt};
  if (o.block_length) {
    l.data = block_maxima(data, *o.block_length);
    l.blocks = static_cast<std::size_t>(l.data.rows());
  } else if (o.block_group) {
    l.data = block_maxima_by_group(data, *table.groups);
    l.blocks = static_cast<std::size_t>(l.data.rows());
  }
  if (l.data.rows() < 4) throw DataError("need at least 4 observations, got " + std::to_string(l.data.rows()));
  return l;
}

TiesPolicy ties_policy(const Options& o, const DataMatrix& data) {
  if (!o.ties) {
    for (Eigen::Index j = 0; j < data.cols(); ++j) {
      Eigen::VectorXd col = data.values().col(j);
      if (column_has_ties(std::span<const double>(col.data(), static_cast<std::size_t>(col.size()))))
        throw DataError("column '" + data.labels()[static_cast<std::size_t>(j)] +
                        "' has ties; the tests assume continuous margins. Choose a policy with "
                        "--ties average|random|max");
    }
    return TiesPolicy{TiesKind::average, o.seed};
  }
  return TiesPolicy{parse_ties_kind(*o.ties), o.seed};
}

void require_bivariate(const std::vector<std::string>& tests, Eigen::Index d) {
  for (const auto& t : tests)
    if (t != "maxstab" && d != 2)
      throw DataError("test '" + t + "' requires exactly 2 columns, got " + std::to_string(d) +
                      " (use --columns)");
}

ordered_json to_json(const TestReport& r) {
  ordered_json j;
  j["method"] = r.method;
  j["statistic"] = r.statistic;
  j["p_value"] = r.p_value;
  j["replicates"] = r.replicates;
  j["seed"] = r.seed ? ordered_json(*r.seed) : ordered_json(nullptr);
  j["heuristic"] = r.heuristic;
  ordered_json extras = ordered_json::object();
  for (const auto& [k, v] : r.extras) extras[k] = v;
  j["extras"] = extras;
  return j;
}

double statistic_only(const std::string& id, const PseudoObs& u) {
  if (id == "s2n") return s2n_statistic(u.values());
  if (id == "s3n") return s3n_statistic(u.values());
  return kNaN;
}

fs::path out_dir(const Options& o) {
  fs::path p(*o.out);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec || !fs::is_directory(p)) throw DataError("cannot create output directory '" + p.string() + "'");
  return p;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p);
  if (!f) throw DataError("cannot write '" + p.string() + "'");
  return f;
}

void write_summary_csv(std::ostream& out, const std::vector<std::string>& names,
                       const std::vector<std::vector<double>>& cols) {
  out << "statistic";
  for (const auto& n : names) out << ',' << n;
  out << '\n';
  std::vector<Summary> s;
  for (const auto& c : cols) s.push_back(summarize(c));
  const char* labels[] = {"Min.", "1st Qu.", "Median", "Mean", "3rd Qu.", "Max."};
  for (int row = 0; row < 6; ++row) {
    out << labels[row];
    for (const auto& x : s) {
      const double v[] = {x.min, x.q1, x.median, x.mean, x.q3, x.max};
      out << ',' << format_number(x.count ? v[row] : kNaN);
    }
    out << '\n';
  }
}

// Aligned text rendering of a summary block, in the layout of R's summary().
void write_summary_text(std::ostream& out, const std::vector<std::string>& names,
                        const std::vector<std::vector<double>>& cols) {
  out << std::left << std::setw(10) << "";
  for (const auto& n : names) out << std::right << std::setw(14) << n;
  out << '\n';
  std::vector<Summary> s;
  for (const auto& c : cols) s.push_back(summarize(c));
  const char* labels[] = {"Min.", "1st Qu.", "Median", "Mean", "3rd Qu.", "Max."};
  for (int row = 0; row < 6; ++row) {
    out << std::left << std::setw(10) << labels[row];
    for (const auto& x : s) {
      const double v[] = {x.min, x.q1, x.median, x.mean, x.q3, x.max};
      out << std::right << std::setw(14) << format_number(x.count ? v[row] : kNaN);
    }
    out << '\n';
  }
}

int cmd_test(const Options& o, std::ostream& out) {
  check_tests(o.tests);
  const Loaded l = load(o);
  require_bivariate(o.tests, l.data.cols());
  const TiesPolicy policy = ties_policy(o, l.data);
  const PseudoObs u = pseudo_observations(l.data, policy);
  const TestOptions topts = test_options(o, l.data.cols());

  ordered_json reports = ordered_json::array();
  bool failed = false;
  for (const auto& id : o.tests) {
    ordered_json j;
    try {
      TestReport r = run_named_test(id, u, topts);
      if (l.blocks) {
        r.heuristic = true;
        r.extras["blocks"] = static_cast<double>(*l.blocks);
        if (o.block_length) r.extras["block_length"] = static_cast<double>(*o.block_length);
      }
      j = to_json(r);
    } catch (const NumericError& e) {
      failed = true;
      j["method"] = id;
      j["statistic"] = statistic_only(id, u);
      j["p_value"] = nullptr;
      j["error"] = e.what();
    }
    j["n"] = u.rows();
    j["ties"] = o.ties ? *o.ties : std::string("none");
    reports.push_back(j);
  }
  out << reports.dump(2) << '\n';
  if (o.out) open_out(out_dir(o) / "report.json") << reports.dump(2) << '\n';
  return failed ? numeric_failure : ok;
}

int cmd_randomize(const Options& o, std::ostream& out) {
  if (o.randomizations < 2) throw UsageError("--randomizations must be >= 2");
  check_tests(o.tests);
  const Loaded l = load(o);
  require_bivariate(o.tests, l.data.cols());
  if (l.data.cols() != 2) throw DataError("randomize requires exactly 2 columns (use --columns)");
  const TestOptions topts = test_options(o, 2);

  std::vector<std::string> names = o.tests;
  names.push_back("theta");
  names.push_back("se");
  std::vector<std::vector<double>> cols(names.size());
  for (std::size_t k = 0; k < o.randomizations; ++k) {
    const PseudoObs u = pseudo_observations(l.data, TiesPolicy{TiesKind::random, derive_seed(o.seed, k)});
    for (std::size_t t = 0; t < o.tests.size(); ++t) {
      double p = kNaN;
      try {
        p = run_named_test(o.tests[t], u, topts).p_value;
      } catch (const NumericError&) {
      }
      cols[t].push_back(p);
    }
    double theta = kNaN, se = kNaN;
    try {
      const ItauFit f = fit_gumbel_itau(u.values());
      theta = f.theta;
      se = f.std_error;
    } catch (const NumericError&) {
    }
    cols[o.tests.size()].push_back(theta);
    cols[o.tests.size() + 1].push_back(se);
  }

  write_summary_text(out, names, cols);
  if (o.out) {
    const fs::path dir = out_dir(o);
    std::ofstream rows = open_out(dir / "randomize.csv");
    rows << "run";
    for (const auto& n : names) rows << ',' << n;
    rows << '\n';
    for (std::size_t k = 0; k < o.randomizations; ++k) {
      rows << k + 1;
      for (const auto& c : cols) rows << ',' << format_number(c[k]);
      rows << '\n';
    }
    std::ofstream sum = open_out(dir / "randomize_summary.csv");
    write_summary_csv(sum, names, cols);
  }
  return ok;
}

int cmd_ties_experiment(const Options& o, std::ostream& out) {
  check_tests(o.tests);
  if (o.reps < 1) throw UsageError("--reps must be >= 1");
  const Loaded l = load(o);
  if (l.data.cols() != 2) throw DataError("ties-experiment requires exactly 2 columns (use --columns)");
  const auto tmpl = ties_template(l.data.values());
  const std::size_t n = static_cast<std::size_t>(l.data.rows());

  double theta = 0.0;
  if (o.theta) {
    theta = *o.theta;
  } else {
    const PseudoObs ref = pseudo_observations(l.data, TiesPolicy{TiesKind::random, o.seed});
    theta = fit_gumbel_itau(ref.values()).theta;
  }
  const CopulaFamily model(Family::gumbel, theta);
  TestOptions topts = test_options(o, 2);

  const char* kinds[] = {"continuous", "average", "random"};
  std::vector<std::vector<std::vector<double>>> p(o.tests.size(), std::vector<std::vector<double>>(3));
  for (std::size_t r = 0; r < o.reps; ++r) {
    const std::uint64_t seed = derive_seed(o.seed, r);
    const Eigen::MatrixXd x = model.sample(n, seed);
    const Eigen::MatrixXd tied = impose_ties(x, tmpl);
    const PseudoObs samples[] = {pseudo_observations(x, TiesPolicy{TiesKind::average, 0}),
                                 pseudo_observations(tied, TiesPolicy{TiesKind::average, 0}),
                                 pseudo_observations(tied, TiesPolicy{TiesKind::random, derive_seed(seed, 1)})};
    topts.seed = seed;
    for (std::size_t t = 0; t < o.tests.size(); ++t)
      for (int k = 0; k < 3; ++k) {
        double pv = kNaN;
        try {
          pv = run_named_test(o.tests[t], samples[k], topts).p_value;
        } catch (const NumericError&) {
        }
        p[t][static_cast<std::size_t>(k)].push_back(pv);
      }
  }

  auto rate = [&](const std::vector<double>& v) {
    std::size_t rej = 0, m = 0;
    for (double x : v)
      if (!std::isnan(x)) {
        ++m;
        if (x <= o.level) ++rej;
      }
    return m ? static_cast<double>(rej) / static_cast<double>(m) : kNaN;
  };
  auto diff = [](const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
  };

  std::ostringstream rates;
  rates << "test,continuous,average,random\n";
  for (std::size_t t = 0; t < o.tests.size(); ++t)
    rates << o.tests[t] << ',' << format_number(rate(p[t][0])) << ',' << format_number(rate(p[t][1])) << ','
          << format_number(rate(p[t][2])) << '\n';
  out << "theta = " << format_number(theta) << ", n = " << n << ", reps = " << o.reps << "\n\nrejection rates at level "
      << o.level << "\n"
      << rates.str();
  std::vector<std::string> dnames;
  std::vector<std::vector<double>> dcols;
  for (std::size_t t = 0; t < o.tests.size(); ++t) {
    dnames.push_back(o.tests[t] + ":avg-cont");
    dcols.push_back(diff(p[t][1], p[t][0]));
    dnames.push_back(o.tests[t] + ":rand-cont");
    dcols.push_back(diff(p[t][2], p[t][0]));
  }
  out << "\np-value differences\n";
  write_summary_text(out, dnames, dcols);

  if (o.out) {
    const fs::path dir = out_dir(o);
    std::ofstream rows = open_out(dir / "ties_experiment.csv");
    rows << "rep";
    for (const auto& t : o.tests)
      for (const char* k : kinds) rows << ',' << t << '_' << k;
    rows << '\n';
    for (std::size_t r = 0; r < o.reps; ++r) {
      rows << r + 1;
      for (std::size_t t = 0; t < o.tests.size(); ++t)
        for (std::size_t k = 0; k < 3; ++k) rows << ',' << format_number(p[t][k][r]);
      rows << '\n';
    }
    open_out(dir / "ties_rates.csv") << rates.str();
    std::ofstream d = open_out(dir / "ties_differences.csv");
    write_summary_csv(d, dnames, dcols);
  }
  return ok;
}

int cmd_aplot(const Options& o, std::ostream& out) {
  const Loaded l = load(o);
  if (l.data.cols() != 2) throw DataError("aplot requires exactly 2 columns (use --columns)");
  const PseudoObs u = pseudo_observations(l.data, ties_policy(o, l.data));
  const auto threshold = threshold_of(o, 2);
  const APlot full = a_plot(u);
  const APlot used = threshold ? a_plot(u, threshold) : full;
  if (used.t.empty()) throw DataError("A-plot has no points above the threshold");

  std::ostringstream points;
  points << "t,z,trimmed\n" << std::setprecision(17);
  for (std::size_t i = 0; i < full.t.size(); ++i) {
    const Eigen::Index row = full.rows[i];
    const bool in = threshold && u(row, 0) >= (*threshold)[0] && u(row, 1) >= (*threshold)[1];
    points << full.t[i] << ',' << full.z[i] << ',' << (in ? 1 : 0) << '\n';
  }

  ordered_json j;
  j["points"] = used.t.size();
  j["dropped"] = full.dropped;
  j["trimmed"] = used.trimmed;
  j["interior_knots"] = o.knots;
  std::ostringstream spline;
  if (used.t.size() >= o.knots + 3) {
    const PickandsEstimate a = spline_fit_a(used, o.knots);
    j["residual"] = aplot_residual(used, a);
    spline << "t,A\n" << std::setprecision(17);
    for (int i = 0; i <= 200; ++i) {
      const double t = i / 200.0;
      spline << t << ',' << a(t) << '\n';
    }
  } else {
    j["residual"] = nullptr;
    j["warning"] = "too few points for the spline fit";
  }

  if (o.out) {
    const fs::path dir = out_dir(o);
    open_out(dir / "aplot.csv") << points.str();
    if (!spline.str().empty()) open_out(dir / "aplot_spline.csv") << spline.str();
    out << j.dump(2) << '\n';
  } else {
    out << points.str();
  }
  return ok;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const Family f = parse_family(o.family);
  if (f == Family::ev_from_a) throw UsageError("simulate: family ev_from_a is library-only");
  if (o.theta && o.tau) throw UsageError("give either --theta or --tau, not both");
  double param = 0.0;
  if (o.theta)
    param = *o.theta;
  else if (o.tau)
    param = param_from_tau(f, *o.tau);
  else if (f != Family::independence)
    throw UsageError("simulate needs --theta or --tau");
  const CopulaFamily c(f, param);
  const Eigen::MatrixXd x = c.sample(o.n, o.seed);
  std::ostringstream s;
  s << std::setprecision(17);
  write_csv(s, x, {"u1", "u2"});
  if (o.out)
    open_out(out_dir(o) / "sample.csv") << s.str();
  else
    out << s.str();
  return ok;
}

int cmd_power(const Options& o, std::ostream& out) {
  check_tests(o.tests);
  PowerSpec spec;
  spec.families.clear();
  for (const auto& f : o.families) spec.families.push_back(parse_family(f));
  spec.taus = o.taus;
  spec.n = o.n;
  spec.reps = o.reps;
  spec.bootstrap_reps = o.bootstrap_reps;
  spec.bootstrap_replicates = o.B;
  spec.level = o.level;
  spec.seed = o.seed;
  spec.threads = o.threads;
  const PowerTable table = run_power_study(spec, o.tests);
  write_power_text(out, table, o.tests);
  if (o.out) {
    const fs::path dir = out_dir(o);
    std::ofstream csv = open_out(dir / "power.csv");
    write_power_csv(csv, table, o.timings);
    std::ofstream txt = open_out(dir / "power.txt");
    write_power_text(txt, table, o.tests);
  }
  return ok;
}

void add_data_options(CLI::App* c, Options& o) {
  c->add_option("--input", o.input, "CSV file with a header row")->required();
  c->add_option("--columns", o.columns, "Columns to use, by header name")->delimiter(',');
  c->add_option("--ties", o.ties, "Ties policy: average, random or max");
  c->add_option("--block-length", o.block_length, "Replace data by maxima of consecutive blocks");
  c->add_option("--block-group", o.block_group, "Replace data by maxima within groups of this column");
}

void add_test_options(CLI::App* c, Options& o) {
  c->add_option("--tests", o.tests, "Comma list: s2n,s3n,maxstab,pickands_a,aplot_resid")->delimiter(',');
  c->add_option("--B", o.B, "Bootstrap replicates")->check(CLI::PositiveNumber);
  c->add_option("--r", o.r_values, "Max-stability exponents")->delimiter(',');
  c->add_option("--threshold", o.threshold, "Tail threshold t1,t2")->delimiter(',');
  c->add_option("--knots", o.knots, "Interior knots of the A-plot spline");
  c->add_option("--law", o.law, "Multiplier law: normal or rademacher");
}

}  // namespace

double quantile7(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return kNaN;
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Summary summarize(std::vector<double> v) {
  v.erase(std::remove_if(v.begin(), v.end(), [](double x) { return std::isnan(x); }), v.end());
  Summary s;
  s.count = v.size();
  if (v.empty()) return s;
  std::sort(v.begin(), v.end());
  s.min = v.front();
  s.max = v.back();
  s.q1 = quantile7(v, 0.25);
  s.median = quantile7(v, 0.5);
  s.q3 = quantile7(v, 0.75);
  double sum = 0.0;
  for (double x : v) sum += x;
  s.mean = sum / static_cast<double>(v.size());
  return s;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Rank-based tests of extreme-value dependence", "evdep"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", o.seed, "Master seed");
  app.add_option("--out", o.out, "Output directory");
  app.add_option("--level", o.level, "Significance level")->check(CLI::Range(0.0, 1.0));

  auto* test = app.add_subcommand("test", "Run tests on a CSV sample and print JSON reports");
  add_data_options(test, o);
  add_test_options(test, o);

  auto* randomize = app.add_subcommand("randomize", "Repeat tests over random tie-breakings");
  add_data_options(randomize, o);
  add_test_options(randomize, o);
  randomize->add_option("--randomizations", o.randomizations, "Number of random tie-breakings");

  auto* ties = app.add_subcommand("ties-experiment", "Effect of a reference tie pattern on the tests");
  add_data_options(ties, o);
  add_test_options(ties, o);
  ties->add_option("--theta", o.theta, "Gumbel-Hougaard parameter (default: fit to the input)");
  ties->add_option("--reps", o.reps, "Simulated samples");

  auto* aplot = app.add_subcommand("aplot", "Export the A-plot and its spline fit");
  add_data_options(aplot, o);
  aplot->add_option("--threshold", o.threshold, "Trim to points in [t1,1]x[t2,1]")->delimiter(',');
  aplot->add_option("--knots", o.knots, "Interior knots of the spline");

  auto* simulate = app.add_subcommand("simulate", "Draw a sample from a copula family");
  simulate->add_option("--family", o.family, "gumbel, clayton, frank, gaussian, student_t4, independence");
  simulate->add_option("--theta", o.theta, "Family parameter");
  simulate->add_option("--tau", o.tau, "Kendall's tau (alternative to --theta)");
  simulate->add_option("--n", o.n, "Sample size")->check(CLI::PositiveNumber);

  auto* power = app.add_subcommand("power", "Monte Carlo rejection rates across families and taus");
  power->add_option("--families", o.families, "Comma list of families")->delimiter(',');
  power->add_option("--taus", o.taus, "Comma list of Kendall's tau values")->delimiter(',');
  power->add_option("--n", o.n, "Sample size")->check(CLI::PositiveNumber);
  power->add_option("--reps", o.reps, "Samples per cell for asymptotic tests");
  power->add_option("--bootstrap-reps", o.bootstrap_reps, "Samples per cell for bootstrap tests");
  power->add_option("--B", o.B, "Bootstrap replicates")->check(CLI::PositiveNumber);
  power->add_option("--tests", o.tests, "Comma list of tests")->delimiter(',');
  power->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  power->add_flag("--timings", o.timings, "Add mean runtimes to power.csv");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  try {
    if (*test) return cmd_test(o, out);
    if (*randomize) return cmd_randomize(o, out);
    if (*ties) return cmd_ties_experiment(o, out);
    if (*aplot) return cmd_aplot(o, out);
    if (*simulate) return cmd_simulate(o, out);
    if (*power) return cmd_power(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return data_error;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return numeric_failure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return data_error;
  }
  return usage;
}

}  // namespace evdep::cli
