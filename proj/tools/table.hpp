#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "config.hpp"

namespace lauricella::cli {

using Cell = std::variant<double, std::string>;

/// Column-named result rows, written as CSV with a header or as a JSON array
/// of objects.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

/// Shortest decimal string that parses back to the same double.
std::string format_number(double v);

void write_csv(std::ostream& os, const Table& t);
void write_json(std::ostream& os, const Table& t);
void write_table(std::ostream& os, const Table& t, Format f);

}  // namespace lauricella::cli
