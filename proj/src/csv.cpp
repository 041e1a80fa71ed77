#include "robosym/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "robosym/error.hpp"

namespace robosym::csv {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    // Trim surrounding spaces.
    size_t begin = cell.find_first_not_of(" \t\r");
    size_t end = cell.find_last_not_of(" \t\r");
    cells.push_back(begin == std::string::npos ? "" : cell.substr(begin, end - begin + 1));
  }
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Table read(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::io_error, "cannot open '" + path + "'");

  std::string line;
  require(static_cast<bool>(std::getline(in, line)), ErrorCode::parse_error,
          path + ": empty file");
  Table table;
  table.header = split_line(line);
  size_t width = table.header.size();

  std::vector<double> values;
  int row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++row;
    std::vector<std::string> cells = split_line(line);
    require(cells.size() == width, ErrorCode::parse_error,
            path + ": row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                " cells, expected " + std::to_string(width));
    for (size_t c = 0; c < cells.size(); ++c) {
      try {
        size_t used = 0;
        double v = std::stod(cells[c], &used);
        require(used == cells[c].size(), ErrorCode::parse_error, "");
        values.push_back(v);
      } catch (const std::exception&) {
        fail(ErrorCode::parse_error, path + ": non-numeric cell at row " + std::to_string(row) +
                                         ", column '" + table.header[c] + "'");
      }
    }
  }
  table.rows.resize(row, static_cast<Eigen::Index>(width));
  for (int r = 0; r < row; ++r)
    for (size_t c = 0; c < width; ++c) table.rows(r, static_cast<Eigen::Index>(c)) = values[r * width + c];
  return table;
}

void write(const std::string& path, const std::vector<std::string>& header,
           const Eigen::MatrixXd& rows) {
  require(rows.cols() == static_cast<Eigen::Index>(header.size()) || rows.rows() == 0,
          ErrorCode::invalid_argument, "header width does not match data width");
  std::ofstream out(path);
  require(out.good(), ErrorCode::io_error, "cannot write '" + path + "'");
  for (size_t i = 0; i < header.size(); ++i) {
    if (i > 0) out << ',';
    out << header[i];
  }
  out << '\n';
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    for (Eigen::Index c = 0; c < rows.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_double(rows(r, c));
    }
    out << '\n';
  }
  require(out.good(), ErrorCode::io_error, "write failed for '" + path + "'");
}

}  // namespace robosym::csv
