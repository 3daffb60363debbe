#include "gfz/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "gfz/error.hpp"

namespace gfz {

namespace {

bool parse_row(const std::string& line, std::vector<double>& out) {
  out.clear();
  std::string cell;
  std::istringstream ls(line);
  while (std::getline(ls, cell, ',')) {
    try {
      size_t pos = 0;
      // Trim spaces around the cell.
      size_t b = cell.find_first_not_of(" \t\r");
      size_t e = cell.find_last_not_of(" \t\r");
      if (b == std::string::npos) return false;
      double v = std::stod(cell.substr(b, e - b + 1), &pos);
      if (pos != e - b + 1) return false;
      out.push_back(v);
    } catch (const std::exception&) {
      return false;
    }
  }
  return !out.empty();
}

}  // namespace

Eigen::MatrixXd read_feature_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open feature csv: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    if (!parse_row(line, row)) {
      if (first_content) {  // header
        first_content = false;
        continue;
      }
      fail(ErrorCode::Parse, path + ":" + std::to_string(lineno) + ": bad csv row");
    }
    first_content = false;
    if (!rows.empty() && row.size() != rows.front().size())
      fail(ErrorCode::Parse, path + ":" + std::to_string(lineno) + ": ragged csv row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(ErrorCode::Parse, path + ": empty feature csv");
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

std::string matrix_to_csv(const Eigen::MatrixXd& m) {
  std::string out;
  char buf[64];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.12g", m(i, j));
      out += buf;
      out += (j + 1 < m.cols()) ? "," : "\n";
    }
  }
  return out;
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::Io, "cannot write csv: " + path);
  out << matrix_to_csv(m);
}

}  // namespace gfz
