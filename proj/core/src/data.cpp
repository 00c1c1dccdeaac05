#include "evdep/data.hpp"

#include "evdep/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace evdep {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\"");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\"");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

DataMatrix::DataMatrix(Eigen::MatrixXd values, std::vector<std::string> labels)
    : values_(std::move(values)), labels_(std::move(labels)) {
  if (labels_.empty()) {
    for (Eigen::Index j = 0; j < values_.cols(); ++j) labels_.push_back("V" + std::to_string(j + 1));
  }
  if (static_cast<Eigen::Index>(labels_.size()) != values_.cols())
    throw std::invalid_argument("DataMatrix: label count does not match column count");
  for (Eigen::Index j = 0; j < values_.cols(); ++j)
    for (Eigen::Index i = 0; i < values_.rows(); ++i)
      if (!std::isfinite(values_(i, j)))
        throw DataError("non-finite value at row " + std::to_string(i + 1) + ", column '" +
                        labels_[j] + "'");
}

DataMatrix DataMatrix::select_columns(const std::vector<Eigen::Index>& cols) const {
  Eigen::MatrixXd v(values_.rows(), static_cast<Eigen::Index>(cols.size()));
  std::vector<std::string> l;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (cols[k] < 0 || cols[k] >= values_.cols())
      throw std::out_of_range("DataMatrix::select_columns: column index out of range");
    v.col(static_cast<Eigen::Index>(k)) = values_.col(cols[k]);
    l.push_back(labels_[cols[k]]);
  }
  return DataMatrix(std::move(v), std::move(l));
}

PseudoObs::PseudoObs(Eigen::MatrixXd values) : values_(std::move(values)) {
  for (Eigen::Index j = 0; j < values_.cols(); ++j)
    for (Eigen::Index i = 0; i < values_.rows(); ++i) {
      double u = values_(i, j);
      if (!(u > 0.0 && u < 1.0))
        throw DataError("pseudo-observation outside (0,1) at row " + std::to_string(i + 1) +
                        ", column " + std::to_string(j + 1));
    }
}

TiesKind parse_ties_kind(const std::string& name) {
  if (name == "average") return TiesKind::average;
  if (name == "random") return TiesKind::random;
  if (name == "max") return TiesKind::max;
  throw std::invalid_argument("unknown ties policy '" + name + "' (expected average|random|max)");
}

std::string to_string(TiesKind kind) {
  switch (kind) {
    case TiesKind::average: return "average";
    case TiesKind::random: return "random";
    case TiesKind::max: return "max";
  }
  return "?";
}

CsvTable read_csv(std::istream& in, const std::optional<std::string>& group_column) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("CSV input is empty");
  auto header = split_fields(line);
  int group_idx = -1;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (group_column && header[k] == *group_column)
      group_idx = static_cast<int>(k);
    else
      labels.push_back(header[k]);
  }
  if (group_column && group_idx < 0)
    throw DataError("group column '" + *group_column + "' not found in CSV header");

  std::vector<double> flat;
  std::vector<std::string> groups;
  std::size_t row = 0, line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    ++row;
    auto fields = split_fields(line);
    if (fields.size() != header.size())
      throw DataError("row " + std::to_string(row) + " (line " + std::to_string(line_no) + "): expected " + std::to_string(header.size()) +
                      " fields, found " + std::to_string(fields.size()));
    for (std::size_t k = 0; k < fields.size(); ++k) {
      if (static_cast<int>(k) == group_idx) {
        groups.push_back(fields[k]);
        continue;
      }
      const auto& f = fields[k];
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size() || f.empty() || !std::isfinite(v))
        throw DataError("row " + std::to_string(row) + " (line " + std::to_string(line_no) + "), column '" + header[k] +
                        "': cannot parse '" + f + "' as a finite real");
      flat.push_back(v);
    }
  }
  const auto d = static_cast<Eigen::Index>(labels.size());
  Eigen::MatrixXd values(static_cast<Eigen::Index>(row), d);
  for (Eigen::Index i = 0; i < values.rows(); ++i)
    for (Eigen::Index j = 0; j < d; ++j) values(i, j) = flat[static_cast<std::size_t>(i * d + j)];
  CsvTable t{DataMatrix(std::move(values), std::move(labels)), std::nullopt};
  if (group_column) t.groups = std::move(groups);
  return t;
}

CsvTable read_csv_file(const std::string& path, const std::optional<std::string>& group_column) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return read_csv(in, group_column);
}

void write_csv(std::ostream& out, const Eigen::MatrixXd& values,
               const std::vector<std::string>& labels) {
  for (std::size_t k = 0; k < labels.size(); ++k) out << (k ? "," : "") << labels[k];
  out << '\n';
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) out << (j ? "," : "") << values(i, j);
    out << '\n';
  }
}

}  // namespace evdep
