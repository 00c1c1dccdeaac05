#include "evdep/empirical_copula.hpp"

#include "evdep/rng.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace evdep {

namespace {

constexpr std::size_t kMaxTableCells = std::size_t{1} << 24;

std::vector<double> sorted_unique(const Eigen::VectorXd& v) {
  std::vector<double> s(v.data(), v.data() + v.size());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

std::size_t rank_leq(const std::vector<double>& sorted, double x) {
  return static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
}

}  // namespace

EmpiricalCopula::EmpiricalCopula(PseudoObs pobs) : pobs_(std::move(pobs)) {
  if (pobs_.rows() < 1) throw std::invalid_argument("EmpiricalCopula: empty sample");
  if (pobs_.cols() != 2) return;
  sorted1_ = sorted_unique(pobs_.values().col(0));
  sorted2_ = sorted_unique(pobs_.values().col(1));
  const std::size_t k1 = sorted1_.size(), k2 = sorted2_.size();
  if ((k1 + 1) * (k2 + 1) > kMaxTableCells) {
    sorted1_.clear();
    sorted2_.clear();
    return;
  }
  stride_ = k2 + 1;
  table_.assign((k1 + 1) * stride_, 0);
  for (Eigen::Index i = 0; i < pobs_.rows(); ++i) {
    std::size_t a = rank_leq(sorted1_, pobs_(i, 0));  // 1-based position in sorted1_
    std::size_t b = rank_leq(sorted2_, pobs_(i, 1));
    ++table_[a * stride_ + b];
  }
  for (std::size_t a = 0; a <= k1; ++a)
    for (std::size_t b = 1; b <= k2; ++b) table_[a * stride_ + b] += table_[a * stride_ + b - 1];
  for (std::size_t a = 1; a <= k1; ++a)
    for (std::size_t b = 0; b <= k2; ++b) table_[a * stride_ + b] += table_[(a - 1) * stride_ + b];
}

std::size_t EmpiricalCopula::count_table(double u1, double u2) const {
  return table_[rank_leq(sorted1_, u1) * stride_ + rank_leq(sorted2_, u2)];
}

std::size_t EmpiricalCopula::count(std::span<const double> u) const {
  if (static_cast<Eigen::Index>(u.size()) != dim())
    throw std::invalid_argument("EmpiricalCopula: point has dimension " + std::to_string(u.size()) +
                                ", copula has " + std::to_string(dim()));
  if (!table_.empty()) return count_table(u[0], u[1]);
  const auto& v = pobs_.values();
  std::size_t c = 0;
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    bool in = true;
    for (Eigen::Index j = 0; j < v.cols() && in; ++j) in = v(i, j) <= u[static_cast<std::size_t>(j)];
    c += in;
  }
  return c;
}

double EmpiricalCopula::eval(std::span<const double> u) const {
  return static_cast<double>(count(u)) / static_cast<double>(size());
}

double EmpiricalCopula::eval(double u1, double u2) const {
  const double u[2] = {u1, u2};
  return eval(std::span<const double>(u, 2));
}

double EmpiricalCopula::default_bandwidth() const {
  return 1.0 / std::sqrt(static_cast<double>(size()));
}

double EmpiricalCopula::partial_derivative(std::size_t j, std::span<const double> u, double h) const {
  if (static_cast<Eigen::Index>(u.size()) != dim() || j >= u.size())
    throw std::invalid_argument("EmpiricalCopula::partial_derivative: dimension mismatch");
  if (!(h > 0.0)) throw std::invalid_argument("EmpiricalCopula::partial_derivative: bandwidth must be > 0");
  std::vector<double> lo(u.begin(), u.end()), hi(u.begin(), u.end());
  lo[j] = std::max(u[j] - h, 0.0);
  hi[j] = std::min(u[j] + h, 1.0);
  const double d = (eval(hi) - eval(lo)) / (2.0 * h);
  return std::clamp(d, 0.0, 1.0);
}

Eigen::MatrixXd draw_multipliers(Eigen::Index n, const MultiplierConfig& cfg) {
  if (cfg.replicates == 0) throw std::invalid_argument("multiplier bootstrap: replicates must be >= 1");
  const auto b_count = static_cast<Eigen::Index>(cfg.replicates);
  Eigen::MatrixXd z(n, b_count);
  for (Eigen::Index b = 0; b < b_count; ++b) {
    Rng rng = stream_rng(cfg.seed, static_cast<std::uint64_t>(b));
    if (cfg.law == MultiplierLaw::normal) {
      std::normal_distribution<double> nd;
      for (Eigen::Index i = 0; i < n; ++i) z(i, b) = nd(rng);
    } else {
      std::bernoulli_distribution coin(0.5);
      for (Eigen::Index i = 0; i < n; ++i) z(i, b) = coin(rng) ? 1.0 : -1.0;
    }
  }
  return z;
}

Eigen::MatrixXd multiplier_weights(const EmpiricalCopula& c, const Eigen::MatrixXd& points,
                                   double bandwidth) {
  const auto& u = c.pobs().values();
  const auto n = u.rows(), d = u.cols();
  if (points.cols() != d) throw std::invalid_argument("multiplier_weights: dimension mismatch");
  if (points.rows() == 0) throw std::invalid_argument("multiplier_weights: no evaluation points");
  if (bandwidth >= 0.5) throw std::invalid_argument("multiplier_weights: bandwidth must be < 1/2");
  const double h = bandwidth > 0.0 ? bandwidth : c.default_bandwidth();
  const double nd = static_cast<double>(n);

  Eigen::MatrixXd w(points.rows(), n);
  std::vector<double> pt(static_cast<std::size_t>(d)), deriv(static_cast<std::size_t>(d)),
      margin(static_cast<std::size_t>(d));
  for (Eigen::Index k = 0; k < points.rows(); ++k) {
    for (Eigen::Index j = 0; j < d; ++j) pt[static_cast<std::size_t>(j)] = points(k, j);
    const double cn = c.eval(pt);
    for (Eigen::Index j = 0; j < d; ++j) {
      const auto js = static_cast<std::size_t>(j);
      deriv[js] = c.partial_derivative(js, pt, h);
      margin[js] = static_cast<double>((u.col(j).array() <= pt[js]).count()) / nd;
    }
    double offset = -cn;
    for (Eigen::Index j = 0; j < d; ++j)
      offset += deriv[static_cast<std::size_t>(j)] * margin[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < n; ++i) {
      bool joint = true;
      double v = offset;
      for (Eigen::Index j = 0; j < d; ++j) {
        const bool below = u(i, j) <= pt[static_cast<std::size_t>(j)];
        joint = joint && below;
        if (below) v -= deriv[static_cast<std::size_t>(j)];
      }
      w(k, i) = v + (joint ? 1.0 : 0.0);
    }
  }
  return w;
}

Eigen::MatrixXd multiplier_replicates(const EmpiricalCopula& c, const Eigen::MatrixXd& points,
                                      const Eigen::MatrixXd& multipliers, double bandwidth) {
  if (multipliers.rows() != c.size())
    throw std::invalid_argument("multiplier_replicates: multiplier rows must equal n");
  if (multipliers.cols() == 0) throw std::invalid_argument("multiplier_replicates: B must be >= 1");
  const Eigen::MatrixXd w = multiplier_weights(c, points, bandwidth);
  const double scale = 1.0 / std::sqrt(static_cast<double>(c.size()));
  return scale * (multipliers.transpose() * w.transpose());
}

Eigen::MatrixXd multiplier_replicates(const EmpiricalCopula& c, const Eigen::MatrixXd& points,
                                      const MultiplierConfig& cfg) {
  return multiplier_replicates(c, points, draw_multipliers(c.size(), cfg), cfg.bandwidth);
}

}  // namespace evdep
