#include "table.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace lauricella::cli {

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("Table::add: row width does not match the header");
  rows.push_back(std::move(row));
}

std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i]);
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ",";
      if (const double* d = std::get_if<double>(&row[i]))
        os << format_number(*d);
      else
        os << csv_field(std::get<std::string>(row[i]));
    }
    os << "\n";
  }
}

void write_json(std::ostream& os, const Table& t) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (const double* d = std::get_if<double>(&row[i])) {
        if (std::isfinite(*d))
          obj[t.columns[i]] = *d;
        else
          obj[t.columns[i]] = nullptr;
      } else {
        obj[t.columns[i]] = std::get<std::string>(row[i]);
      }
    }
    out.push_back(std::move(obj));
  }
  os << out.dump(2) << "\n";
}

void write_table(std::ostream& os, const Table& t, Format f) {
  if (f == Format::Csv)
    write_csv(os, t);
  else
    write_json(os, t);
}

}  // namespace lauricella::cli
