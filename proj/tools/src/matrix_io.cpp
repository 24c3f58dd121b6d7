#include "matrix_io.hpp"

#include <fstream>
#include <regex>

#include "spec_io.hpp"

namespace qdf::cli {

std::complex<double> parse_complex(const std::string& token) {
  static const std::string real = R"([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)";
  static const std::regex pure_real("^(" + real + ")$");
  static const std::regex pure_imag("^([+-]?(?:\\d+\\.?\\d*|\\.\\d+)?(?:[eE][+-]?\\d+)?)i$");
  static const std::regex both("^(" + real + ")([+-](?:\\d+\\.?\\d*|\\.\\d+)?(?:[eE][+-]?\\d+)?)i$");
  auto coefficient = [](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return std::stod(s);
  };
  std::smatch m;
  if (std::regex_match(token, m, pure_real)) return {std::stod(m[1].str()), 0.0};
  if (std::regex_match(token, m, both)) return {std::stod(m[1].str()), coefficient(m[2].str())};
  if (std::regex_match(token, m, pure_imag)) return {0.0, coefficient(m[1].str())};
  throw SpecError("matrix entry \"" + token + "\" is not a complex number");
}

Eigen::MatrixXcd read_matrix(std::istream& in) {
  long dim = 0;
  if (!(in >> dim) || dim < 1) throw SpecError("matrix file must start with a positive dimension");
  Eigen::MatrixXcd m(dim, dim);
  std::string token;
  for (long i = 0; i < dim; ++i) {
    for (long j = 0; j < dim; ++j) {
      if (!(in >> token)) throw SpecError("matrix file ends before " + std::to_string(dim * dim) + " entries");
      m(i, j) = parse_complex(token);
    }
  }
  if (in >> token) throw SpecError("matrix file has trailing content \"" + token + "\"");
  return m;
}

Eigen::MatrixXcd read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot read matrix file \"" + path + "\"");
  return read_matrix(in);
}

}  // namespace qdf::cli
