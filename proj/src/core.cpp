#include "mnclust/core.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace mnclust {

CountMatrix validate_count_matrix(const MatI& raw) {
  if (raw.rows() < 1 || raw.cols() < 1)
    throw DimensionMismatchError("count matrix must have at least one row and column");
  VecI totals = VecI::Zero(raw.cols());
  for (Eigen::Index t = 0; t < raw.cols(); ++t) {
    for (Eigen::Index i = 0; i < raw.rows(); ++i) {
      if (raw(i, t) < 0) throw NegativeEntryError(i, t);
      totals[t] += raw(i, t);
    }
    if (totals[t] == 0) throw ZeroColumnError(t);
  }
  return CountMatrix{raw, std::move(totals)};
}

ProbabilityMatrix empirical_probabilities(const CountMatrix& x) {
  Mat p(x.dim(), x.len());
  for (Eigen::Index t = 0; t < x.len(); ++t)
    p.col(t) = x.entries.col(t).cast<double>() / static_cast<double>(x.trial_counts[t]);
  return ProbabilityMatrix(std::move(p));
}

namespace {

// Parses one non-negative integer field; `col` is 1-based for diagnostics.
std::int64_t parse_count_field(const std::string& field, std::int64_t line, std::int64_t col) {
  std::size_t a = field.find_first_not_of(" \t\r");
  if (a == std::string::npos) throw InputError(line, col, "empty field");
  std::size_t b = field.find_last_not_of(" \t\r");
  std::string s = field.substr(a, b - a + 1);
  if (s[0] == '-') throw InputError(line, col, "negative value '" + s + "'");
  for (char c : s)
    if (c < '0' || c > '9')
      throw InputError(line, col, "'" + s + "' is not a non-negative integer");
  try {
    return std::stoll(s);
  } catch (const std::out_of_range&) {
    throw InputError(line, col, "value '" + s + "' out of range");
  }
}

}  // namespace

CountMatrix read_count_csv(std::istream& in, bool header) {
  std::vector<std::vector<std::int64_t>> rows;
  std::string line;
  std::int64_t lineno = 0;
  if (header && std::getline(in, line)) ++lineno;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() && in.eof()) break;
    std::vector<std::int64_t> row;
    std::stringstream ss(line);
    std::string field;
    std::int64_t col = 0;
    while (std::getline(ss, field, ',')) {
      ++col;
      row.push_back(parse_count_field(field, lineno, col));
    }
    if (row.empty()) throw InputError(lineno, 1, "empty row");
    if (!rows.empty() && row.size() != rows.front().size())
      throw InputError(lineno, static_cast<std::int64_t>(row.size()),
                       "expected " + std::to_string(rows.front().size()) + " fields, got " +
                           std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError(lineno + 1, 1, "no data rows");
  MatI m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return validate_count_matrix(m);
}

CountMatrix read_count_csv_file(const std::string& path, bool header) {
  std::ifstream in(path);
  if (!in) throw InputError(0, 0, "cannot open '" + path + "'");
  return read_count_csv(in, header);
}

void write_count_csv(std::ostream& out, const MatI& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
}

void write_count_csv_file(const std::string& path, const MatI& m) {
  std::ofstream out(path);
  if (!out) throw InputError(0, 0, "cannot open '" + path + "' for writing");
  write_count_csv(out, m);
}

}  // namespace mnclust
