#include "evdep/ranks.hpp"

#include "evdep/error.hpp"
#include "evdep/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <numeric>
#include <unordered_map>

namespace evdep {

namespace {

std::vector<double> rank_with(std::span<const double> column, TiesKind kind, Rng* rng) {
  const std::size_t n = column.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return column[a] < column[b]; });
  std::vector<double> ranks(n);
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && column[order[end]] == column[order[start]]) ++end;
    // positions start..end-1 hold ranks start+1..end
    if (end - start == 1) {
      ranks[order[start]] = static_cast<double>(start + 1);
    } else {
      switch (kind) {
        case TiesKind::average: {
          double avg = 0.5 * static_cast<double>(start + 1 + end);
          for (std::size_t k = start; k < end; ++k) ranks[order[k]] = avg;
          break;
        }
        case TiesKind::max:
          for (std::size_t k = start; k < end; ++k) ranks[order[k]] = static_cast<double>(end);
          break;
        case TiesKind::random: {
          std::vector<double> block(end - start);
          std::iota(block.begin(), block.end(), static_cast<double>(start + 1));
          std::shuffle(block.begin(), block.end(), *rng);
          for (std::size_t k = start; k < end; ++k) ranks[order[k]] = block[k - start];
          break;
        }
      }
    }
    start = end;
  }
  return ranks;
}

}  // namespace

std::vector<double> rank_column(std::span<const double> column, const TiesPolicy& policy) {
  Rng rng(policy.seed);
  return rank_with(column, policy.kind, &rng);
}

PseudoObs pseudo_observations(const Eigen::MatrixXd& values, const TiesPolicy& policy) {
  const auto n = values.rows();
  if (n < 2) throw std::invalid_argument("pseudo_observations: need at least 2 observations");
  Rng rng(policy.seed);
  Eigen::MatrixXd u(n, values.cols());
  for (Eigen::Index j = 0; j < values.cols(); ++j) {
    Eigen::VectorXd col = values.col(j);
    for (Eigen::Index i = 0; i < n; ++i)
      if (!std::isfinite(col(i)))
        throw DataError("non-finite value at row " + std::to_string(i + 1) + ", column " +
                        std::to_string(j + 1));
    auto r = rank_with(std::span<const double>(col.data(), static_cast<std::size_t>(n)),
                       policy.kind, &rng);
    for (Eigen::Index i = 0; i < n; ++i) u(i, j) = r[static_cast<std::size_t>(i)] / static_cast<double>(n + 1);
  }
  return PseudoObs(std::move(u));
}

PseudoObs pseudo_observations(const DataMatrix& data, const TiesPolicy& policy) {
  return pseudo_observations(data.values(), policy);
}

bool column_has_ties(std::span<const double> column) {
  std::vector<double> v(column.begin(), column.end());
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) != v.end();
}

bool has_ties(const Eigen::MatrixXd& values) {
  for (Eigen::Index j = 0; j < values.cols(); ++j) {
    Eigen::VectorXd col = values.col(j);
    if (column_has_ties(std::span<const double>(col.data(), static_cast<std::size_t>(col.size()))))
      return true;
  }
  return false;
}

std::vector<std::vector<double>> ties_template(const Eigen::MatrixXd& reference) {
  std::vector<std::vector<double>> out;
  for (Eigen::Index j = 0; j < reference.cols(); ++j) {
    Eigen::VectorXd col = reference.col(j);
    Rng unused(0);
    auto r = rank_with(std::span<const double>(col.data(), static_cast<std::size_t>(col.size())),
                       TiesKind::max, &unused);
    std::sort(r.begin(), r.end());
    out.push_back(std::move(r));
  }
  return out;
}

Eigen::MatrixXd impose_ties(const Eigen::MatrixXd& sample, const std::vector<std::vector<double>>& tmpl) {
  if (static_cast<Eigen::Index>(tmpl.size()) != sample.cols())
    throw std::invalid_argument("impose_ties: template has " + std::to_string(tmpl.size()) + " columns, sample " +
                                std::to_string(sample.cols()));
  const auto n = static_cast<std::size_t>(sample.rows());
  Eigen::MatrixXd out(sample.rows(), sample.cols());
  for (Eigen::Index j = 0; j < sample.cols(); ++j) {
    const auto& t = tmpl[static_cast<std::size_t>(j)];
    if (t.size() != n)
      throw std::invalid_argument("impose_ties: template size " + std::to_string(t.size()) +
                                  " does not match sample size " + std::to_string(n));
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return sample(a, j) < sample(b, j); });
    for (std::size_t k = 0; k < n; ++k) {
      if (k > 0 && sample(order[k], j) == sample(order[k - 1], j))
        throw DataError("impose_ties: sample has ties in column " + std::to_string(j + 1));
      out(order[k], j) = t[k];
    }
  }
  return out;
}

DataMatrix block_maxima(const DataMatrix& data, std::size_t block_length) {
  if (block_length == 0) throw std::invalid_argument("block_maxima: block length must be >= 1");
  const auto n = static_cast<std::size_t>(data.rows());
  if (block_length > n)
    throw std::invalid_argument("block_maxima: block length " + std::to_string(block_length) +
                                " exceeds sample size " + std::to_string(n));
  const auto k = static_cast<Eigen::Index>(n / block_length);
  const auto m = static_cast<Eigen::Index>(block_length);
  Eigen::MatrixXd out(k, data.cols());
  for (Eigen::Index b = 0; b < k; ++b)
    out.row(b) = data.values().middleRows(b * m, m).colwise().maxCoeff();
  return DataMatrix(std::move(out), data.labels());
}

DataMatrix block_maxima_by_group(const DataMatrix& data, const std::vector<std::string>& labels) {
  if (labels.empty()) throw std::invalid_argument("block_maxima_by_group: empty label set");
  if (static_cast<Eigen::Index>(labels.size()) != data.rows())
    throw std::invalid_argument("block_maxima_by_group: " + std::to_string(labels.size()) +
                                " labels for " + std::to_string(data.rows()) + " rows");
  std::unordered_map<std::string, Eigen::Index> slot;
  std::vector<Eigen::Index> first_row;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (slot.emplace(labels[i], static_cast<Eigen::Index>(first_row.size())).second)
      first_row.push_back(static_cast<Eigen::Index>(i));
  Eigen::MatrixXd out(static_cast<Eigen::Index>(first_row.size()), data.cols());
  for (std::size_t g = 0; g < first_row.size(); ++g)
    out.row(static_cast<Eigen::Index>(g)) = data.values().row(first_row[g]);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto g = slot[labels[i]];
    out.row(g) = out.row(g).cwiseMax(data.values().row(static_cast<Eigen::Index>(i)));
  }
  return DataMatrix(std::move(out), data.labels());
}

namespace {

void require_bivariate(const Eigen::MatrixXd& s, const char* who) {
  if (s.cols() != 2) throw std::invalid_argument(std::string(who) + ": requires d = 2");
  if (s.rows() < 2) throw std::invalid_argument(std::string(who) + ": requires n >= 2");
}

int sgn(double x) { return (x > 0) - (x < 0); }

std::uint64_t merge_count(std::vector<double>& v, std::vector<double>& buf, std::size_t lo,
                          std::size_t hi) {
  if (hi - lo < 2) return 0;
  std::size_t mid = (lo + hi) / 2;
  std::uint64_t inv = merge_count(v, buf, lo, mid) + merge_count(v, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      inv += mid - i;
      buf[k++] = v[j++];
    } else {
      buf[k++] = v[i++];
    }
  }
  while (i < mid) buf[k++] = v[i++];
  while (j < hi) buf[k++] = v[j++];
  std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo), buf.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return inv;
}

}  // namespace

double kendall_tau(const Eigen::MatrixXd& s) {
  require_bivariate(s, "kendall_tau");
  const auto n = s.rows();
  std::int64_t net = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      net += sgn(s(i, 0) - s(j, 0)) * sgn(s(i, 1) - s(j, 1));
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  return static_cast<double>(net) / pairs;
}

double kendall_tau_fast(const Eigen::MatrixXd& s) {
  require_bivariate(s, "kendall_tau_fast");
  if (has_ties(s)) throw DataError("kendall_tau_fast: ties present");
  const auto n = static_cast<std::size_t>(s.rows());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return s(static_cast<Eigen::Index>(a), 0) < s(static_cast<Eigen::Index>(b), 0);
  });
  std::vector<double> y(n), buf(n);
  for (std::size_t k = 0; k < n; ++k) y[k] = s(static_cast<Eigen::Index>(order[k]), 1);
  const std::uint64_t discordant = merge_count(y, buf, 0, n);
  const std::uint64_t pairs = n * (n - 1) / 2;
  const auto net = static_cast<std::int64_t>(pairs) - 2 * static_cast<std::int64_t>(discordant);
  return static_cast<double>(net) / (0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
}

TauJackknife kendall_tau_jackknife(const Eigen::MatrixXd& s) {
  require_bivariate(s, "kendall_tau_jackknife");
  const auto n = s.rows();
  if (n < 3) throw std::invalid_argument("kendall_tau_jackknife: requires n >= 3");
  std::vector<std::int64_t> c(static_cast<std::size_t>(n), 0);
  std::int64_t net = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      int v = sgn(s(i, 0) - s(j, 0)) * sgn(s(i, 1) - s(j, 1));
      c[static_cast<std::size_t>(i)] += v;
      c[static_cast<std::size_t>(j)] += v;
      net += v;
    }
  const double nd = static_cast<double>(n);
  TauJackknife out;
  out.tau = static_cast<double>(net) / (0.5 * nd * (nd - 1.0));
  const double pairs_minus = 0.5 * (nd - 1.0) * (nd - 2.0);
  std::vector<double> loo(static_cast<std::size_t>(n));
  double mean = 0.0;
  for (std::size_t i = 0; i < loo.size(); ++i) {
    loo[i] = static_cast<double>(net - c[i]) / pairs_minus;
    mean += loo[i];
  }
  mean /= nd;
  double ss = 0.0;
  for (double v : loo) ss += (v - mean) * (v - mean);
  out.variance = (nd - 1.0) / nd * ss;
  return out;
}

}  // namespace evdep
