#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <qdf/big_index.hpp>

namespace qdf::cli {

using Cell = std::variant<Index, double, std::string, bool>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Report {
  std::vector<std::pair<std::string, std::string>> metadata;  // in emission order
  std::vector<Table> tables;
};

enum class Format { csv, json };

/// Shortest decimal that parses back to the same double; "inf", "-inf", "nan".
std::string format_double(double v);

std::string render(const Report& report, Format format);

}  // namespace qdf::cli
