#include "evdep/maxstab.hpp"

#include "evdep/error.hpp"
#include "evdep/ranks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace evdep {

namespace {

void validate(const MaxStabConfig& cfg, Eigen::Index d) {
  if (cfg.r_values.empty()) throw std::invalid_argument("maxstab: r_values must not be empty");
  for (double r : cfg.r_values)
    if (!(r > 1.0)) throw std::invalid_argument("maxstab: every r must exceed 1");
  if (cfg.tail_threshold) {
    if (static_cast<Eigen::Index>(cfg.tail_threshold->size()) != d)
      throw std::invalid_argument("maxstab: threshold dimension does not match data");
    for (double t : *cfg.tail_threshold)
      if (!(t >= 0.0 && t < 1.0)) throw std::invalid_argument("maxstab: threshold coordinates must lie in [0,1)");
  }
}

// Rows of the pseudo-observations that enter the integral.
std::vector<Eigen::Index> integration_rows(const PseudoObs& u, const MaxStabConfig& cfg) {
  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    bool keep = true;
    if (cfg.tail_threshold)
      for (Eigen::Index j = 0; j < u.cols() && keep; ++j)
        keep = u(i, j) >= (*cfg.tail_threshold)[static_cast<std::size_t>(j)];
    if (keep) rows.push_back(i);
  }
  return rows;
}

}  // namespace

double d_process(const EmpiricalCopula& c, double r, std::span<const double> u) {
  if (!(r > 1.0)) throw std::invalid_argument("d_process: r must exceed 1");
  std::vector<double> root(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) root[j] = std::pow(u[j], 1.0 / r);
  const double n = static_cast<double>(c.size());
  return std::sqrt(n) * (std::pow(c.eval(root), r) - c.eval(u));
}

double statistic_t(const EmpiricalCopula& c, const MaxStabConfig& cfg) {
  validate(cfg, c.dim());
  if (c.size() < 2) throw std::invalid_argument("statistic_t: requires n >= 2");
  const auto& u = c.pobs();
  const auto rows = integration_rows(u, cfg);
  std::vector<double> pt(static_cast<std::size_t>(u.cols()));
  double total = 0.0;
  for (double r : cfg.r_values) {
    double s = 0.0;
    for (auto i : rows) {
      for (Eigen::Index j = 0; j < u.cols(); ++j) pt[static_cast<std::size_t>(j)] = u(i, j);
      const double dv = d_process(c, r, pt);
      s += dv * dv;
    }
    total += s / static_cast<double>(c.size());
  }
  return total;
}

TestReport test_maxstab(const PseudoObs& pobs, const MaxStabConfig& cfg) {
  validate(cfg, pobs.cols());
  if (pobs.cols() < 2) throw std::invalid_argument("test_maxstab: requires d >= 2");
  const EmpiricalCopula c(pobs);
  const auto rows = integration_rows(pobs, cfg);
  if (rows.empty()) throw NumericError("test_maxstab: no pseudo-observation lies in the tail region");

  const auto m = static_cast<Eigen::Index>(rows.size());
  const auto d = pobs.cols();
  const auto nr = static_cast<Eigen::Index>(cfg.r_values.size());
  // block 0: U_i; block k: U_i^{1/r_k}
  Eigen::MatrixXd points(m * (1 + nr), d);
  Eigen::MatrixXd factor(m, nr);  // r C_n(u^{1/r})^{r-1}
  for (Eigen::Index k = 0; k < m; ++k) points.row(k) = pobs.values().row(rows[static_cast<std::size_t>(k)]);
  for (Eigen::Index q = 0; q < nr; ++q) {
    const double r = cfg.r_values[static_cast<std::size_t>(q)];
    for (Eigen::Index k = 0; k < m; ++k) {
      auto row = points.row(m * (q + 1) + k);
      row = points.row(k).array().pow(1.0 / r).matrix();
      Eigen::VectorXd pt = row.transpose();
      factor(k, q) = r * std::pow(c.eval(pt), r - 1.0);
    }
  }

  const double stat = statistic_t(c, cfg);
  const Eigen::MatrixXd rep = multiplier_replicates(c, points, cfg.multiplier);
  const auto b_count = rep.rows();
  std::vector<double> t_rep(static_cast<std::size_t>(b_count), 0.0);
  const double n = static_cast<double>(pobs.rows());
  for (Eigen::Index b = 0; b < b_count; ++b) {
    double total = 0.0;
    for (Eigen::Index q = 0; q < nr; ++q) {
      double s = 0.0;
      for (Eigen::Index k = 0; k < m; ++k) {
        const double dv = factor(k, q) * rep(b, m * (q + 1) + k) - rep(b, k);
        s += dv * dv;
      }
      total += s / n;
    }
    t_rep[static_cast<std::size_t>(b)] = total;
  }
  if (std::all_of(t_rep.begin(), t_rep.end(), [&](double v) { return v == t_rep.front(); }))
    throw NumericError("test_maxstab: all bootstrap replicates are identical; p-value undefined");

  TestReport r;
  r.method = "maxstab";
  r.statistic = stat;
  r.p_value = corrected_p_value(stat, t_rep.data(), t_rep.size());
  r.replicates = static_cast<std::size_t>(b_count);
  r.seed = cfg.multiplier.seed;
  r.heuristic = cfg.tail_threshold.has_value();
  r.extras["points"] = static_cast<double>(m);
  if (cfg.tail_threshold)
    for (std::size_t j = 0; j < cfg.tail_threshold->size(); ++j)
      r.extras["threshold_" + std::to_string(j + 1)] = (*cfg.tail_threshold)[j];
  return r;
}

TestReport test_mda_blockmax(const DataMatrix& data, std::size_t block_length,
                             const std::string& inner_test, const TestOptions& opts) {
  if (!is_known_test(inner_test)) throw std::invalid_argument("unknown inner test '" + inner_test + "'");
  const DataMatrix maxima = block_maxima(data, block_length);
  if (has_ties(maxima.values()))
    throw DataError("test_mda_blockmax: block maxima contain ties; resolve ties first");
  const PseudoObs u = pseudo_observations(maxima, TiesPolicy{TiesKind::average, 0});
  TestReport r = run_named_test(inner_test, u, opts);
  r.method = "mda_blockmax/" + r.method;
  r.heuristic = true;
  r.extras["block_length"] = static_cast<double>(block_length);
  r.extras["blocks"] = static_cast<double>(maxima.rows());
  return r;
}

}  // namespace evdep
