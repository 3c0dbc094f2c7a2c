#include "refgp/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "refgp/errors.hpp"

namespace refgp {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(line);
  while (std::getline(ss, cur, ',')) out.push_back(trim(cur));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& tok, int line_no, int col_no) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw config_error("CSV parse error at line " + std::to_string(line_no) +
                       ", column " + std::to_string(col_no) + ": '" + tok +
                       "' is not a number");
  }
  return v;
}

// Column-name pattern "<prefix>1..<prefix>k": returns indices in order, or
// empty when none found.  Throws when the numbering has gaps.
std::vector<int> numbered_columns(const CsvTable& t, const std::string& prefix) {
  std::vector<std::pair<int, int>> found;  // (number, column index)
  for (std::size_t c = 0; c < t.header.size(); ++c) {
    const std::string& h = t.header[c];
    if (h.size() > prefix.size() && h.compare(0, prefix.size(), prefix) == 0) {
      const std::string digits = h.substr(prefix.size());
      if (std::all_of(digits.begin(), digits.end(), [](unsigned char ch) {
            return std::isdigit(ch);
          })) {
        found.emplace_back(std::stoi(digits), static_cast<int>(c));
      }
    }
  }
  std::sort(found.begin(), found.end());
  std::vector<int> cols;
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (found[i].first != static_cast<int>(i) + 1) {
      throw config_error("CSV header: expected consecutive columns " + prefix +
                         "1.." + prefix + std::to_string(found.size()) +
                         ", found " + prefix + std::to_string(found[i].first));
    }
    cols.push_back(found[i].second);
  }
  return cols;
}

}  // namespace

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

Eigen::VectorXd CsvTable::column_values(int idx) const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) v[static_cast<Eigen::Index>(r)] = rows[r][idx];
  return v;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open CSV file: " + path);
  CsvTable t;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    if (t.header.empty()) {
      t.header = split(line);
      continue;
    }
    const auto toks = split(line);
    if (toks.size() != t.header.size()) {
      throw config_error("CSV parse error at line " + std::to_string(line_no) +
                         ": expected " + std::to_string(t.header.size()) +
                         " fields, found " + std::to_string(toks.size()));
    }
    std::vector<double> row(toks.size());
    for (std::size_t c = 0; c < toks.size(); ++c) {
      row[c] = parse_number(toks[c], line_no, static_cast<int>(c) + 1);
    }
    t.rows.push_back(std::move(row));
  }
  if (t.header.empty()) throw config_error("CSV file has no header row: " + path);
  return t;
}

namespace {

// Coordinate columns: x1..xd, or a single column named "x" or "s".
std::vector<int> coordinate_columns(const CsvTable& t) {
  auto cols = numbered_columns(t, "x");
  if (!cols.empty()) return cols;
  int c = t.column("x");
  if (c < 0) c = t.column("s");
  if (c >= 0) return {c};
  throw config_error(
      "CSV header must name coordinate columns x1..xd (or a single column "
      "'x' or 's')");
}

}  // namespace

Dataset dataset_from_table(const CsvTable& t) {
  if (t.rows.empty()) throw config_error("CSV contains no data rows");
  const int y_col = t.column("y");
  if (y_col < 0) throw config_error("CSV header must include a 'y' column");
  const auto coord_cols = coordinate_columns(t);
  const auto reg_cols = numbered_columns(t, "r");

  std::vector<bool> used(t.header.size(), false);
  used[y_col] = true;
  for (int c : coord_cols) used[c] = true;
  for (int c : reg_cols) used[c] = true;
  for (std::size_t c = 0; c < t.header.size(); ++c) {
    if (!used[c]) {
      throw config_error("CSV header: unrecognized column '" + t.header[c] +
                         "' (expected x1..xd / x / s, r1..rp, y)");
    }
  }

  const int n = static_cast<int>(t.rows.size());
  Dataset ds;
  ds.y = t.column_values(y_col);
  ds.locations.resize(n, static_cast<Eigen::Index>(coord_cols.size()));
  for (std::size_t k = 0; k < coord_cols.size(); ++k) {
    ds.locations.col(static_cast<Eigen::Index>(k)) = t.column_values(coord_cols[k]);
  }
  Eigen::MatrixXd regs(n, static_cast<Eigen::Index>(reg_cols.size()));
  for (std::size_t k = 0; k < reg_cols.size(); ++k) {
    regs.col(static_cast<Eigen::Index>(k)) = t.column_values(reg_cols[k]);
  }
  bool have_constant = false;
  for (Eigen::Index c = 0; c < regs.cols(); ++c) {
    if ((regs.col(c).array() == regs(0, c)).all()) have_constant = true;
  }
  if (have_constant) {
    ds.X = regs;
  } else {
    ds.X.resize(n, regs.cols() + 1);
    ds.X.col(0).setOnes();
    if (regs.cols() > 0) ds.X.rightCols(regs.cols()) = regs;
  }
  ds.validate();
  return ds;
}

Dataset dataset_from_csv(const std::string& path) {
  return dataset_from_table(read_csv(path));
}

Eigen::MatrixXd locations_from_csv(const std::string& path) {
  const CsvTable t = read_csv(path);
  const auto coord_cols = coordinate_columns(t);
  Eigen::MatrixXd out(static_cast<Eigen::Index>(t.rows.size()),
                      static_cast<Eigen::Index>(coord_cols.size()));
  for (std::size_t k = 0; k < coord_cols.size(); ++k) {
    out.col(static_cast<Eigen::Index>(k)) = t.column_values(coord_cols[k]);
  }
  return out;
}

void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot open output file: " + path);
  out.precision(17);
  for (std::size_t c = 0; c < header.size(); ++c) {
    out << header[c] << (c + 1 < header.size() ? "," : "\n");
  }
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << row[c] << (c + 1 < row.size() ? "," : "\n");
    }
  }
  if (!out) throw error("write failure: " + path);
}

}  // namespace refgp
