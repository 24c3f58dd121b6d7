#pragma once

#include <istream>
#include <string>

#include <Eigen/Dense>

namespace qdf::cli {

/// Plain-text square matrix: a line holding N, then N rows of N
/// whitespace-separated entries such as "1", "-0.5", "2i", "1+2i", "0.3-1e-3i".
/// Throws SpecError on malformed input.
Eigen::MatrixXcd read_matrix(std::istream& in);
Eigen::MatrixXcd read_matrix_file(const std::string& path);

/// Parses one entry in the format above.
std::complex<double> parse_complex(const std::string& token);

}  // namespace qdf::cli
