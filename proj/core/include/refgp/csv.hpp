#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "refgp/dataset.hpp"

namespace refgp {

// A parsed numeric CSV: comma separated, dot decimal, one required header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const;  // -1 when absent
  Eigen::VectorXd column_values(int idx) const;
};

// Throws config_error with line/column context on malformed input.
CsvTable read_csv(const std::string& path);

// Builds a Dataset from a table whose header names coordinate columns
// (x1..xd, or a single column named "x" or "s"), optional regressor columns
// r1..rp, and the response column y.  When no regressor column is constant, a
// constant column is prepended (intercept).  Unknown columns are rejected.
Dataset dataset_from_table(const CsvTable& table);
Dataset dataset_from_csv(const std::string& path);

// Reads only coordinate columns (same naming rules); used for prediction
// location files.
Eigen::MatrixXd locations_from_csv(const std::string& path);

void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace refgp
