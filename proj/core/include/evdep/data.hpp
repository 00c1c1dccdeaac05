#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace evdep {

// n x d real observations with column labels. Construction rejects
// non-finite entries.
class DataMatrix {
 public:
  DataMatrix() = default;
  explicit DataMatrix(Eigen::MatrixXd values, std::vector<std::string> labels = {});

  const Eigen::MatrixXd& values() const noexcept { return values_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  Eigen::Index rows() const noexcept { return values_.rows(); }
  Eigen::Index cols() const noexcept { return values_.cols(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return values_(i, j); }

  // Columns selected by index, labels carried along.
  DataMatrix select_columns(const std::vector<Eigen::Index>& cols) const;

 private:
  Eigen::MatrixXd values_;
  std::vector<std::string> labels_;
};

// Scaled ranks in (0,1). Only produced by pseudo_observations() or by
// wrapping values the caller vouches for (e.g. simulated uniforms).
class PseudoObs {
 public:
  PseudoObs() = default;
  explicit PseudoObs(Eigen::MatrixXd values);

  const Eigen::MatrixXd& values() const noexcept { return values_; }
  Eigen::Index rows() const noexcept { return values_.rows(); }
  Eigen::Index cols() const noexcept { return values_.cols(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return values_(i, j); }

 private:
  Eigen::MatrixXd values_;
};

enum class TiesKind { average, random, max };

struct TiesPolicy {
  TiesKind kind = TiesKind::average;
  std::uint64_t seed = 0;
};

TiesKind parse_ties_kind(const std::string& name);
std::string to_string(TiesKind kind);

// Parsed CSV with an optional group-label column split off.
struct CsvTable {
  DataMatrix data;
  std::optional<std::vector<std::string>> groups;
};

// Header row of names, then one observation per row. When `group_column` is
// given, that column is kept verbatim as labels instead of parsed as reals.
// Throws DataError naming the offending row/column.
CsvTable read_csv(std::istream& in, const std::optional<std::string>& group_column = std::nullopt);
CsvTable read_csv_file(const std::string& path,
                       const std::optional<std::string>& group_column = std::nullopt);

void write_csv(std::ostream& out, const Eigen::MatrixXd& values,
               const std::vector<std::string>& labels);

}  // namespace evdep
