#pragma once

#include <Eigen/Dense>
#include <string>

namespace gfz {

/// Reads an N x F matrix of decimal floats, comma separated. A first line
/// that does not parse as numbers is treated as a header and skipped.
Eigen::MatrixXd read_feature_csv(const std::string& path);

/// Writes with 12 significant digits, no header.
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);

std::string matrix_to_csv(const Eigen::MatrixXd& m);

}  // namespace gfz
