#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

namespace robosym::csv {

struct Table {
  std::vector<std::string> header;
  Eigen::MatrixXd rows;  // one row per record
};

/// Reads a numeric CSV with a header row. Non-numeric cells raise
/// parse-error naming the row and column.
Table read(const std::string& path);

/// Writes values with 17 significant digits so read-back is exact.
void write(const std::string& path, const std::vector<std::string>& header,
           const Eigen::MatrixXd& rows);

std::string format_double(double v);

}  // namespace robosym::csv
