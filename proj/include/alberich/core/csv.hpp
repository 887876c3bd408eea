#pragma once

#include "alberich/core/error.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace alberich::csv {

/// Shortest decimal text that round-trips to the same double.
inline std::string format(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  if (!text.empty() && text.front() == '+') {
    text.remove_prefix(1);
  }
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ConfigError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

inline std::vector<std::string_view> split_line(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      out.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

/// Comma-delimited, '.' decimal, header row, LF line endings.
class Writer {
public:
  Writer(std::ostream& os, const std::vector<std::string>& header) : os_(os) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      os_ << (i ? "," : "") << header[i];
    }
    os_ << '\n';
    columns_ = header.size();
  }

  void row(std::initializer_list<double> values) { row(values.begin(), values.end()); }

  template <class It>
  void row(It first, It last) {
    std::size_t n = 0;
    for (auto it = first; it != last; ++it, ++n) {
      os_ << (n ? "," : "") << format(*it);
    }
    if (n != columns_) {
      throw InvalidInput("csv row has " + std::to_string(n) + " values, header has " +
                         std::to_string(columns_));
    }
    os_ << '\n';
  }

private:
  std::ostream& os_;
  std::size_t columns_ = 0;
};

/// Numeric table with a header; every data cell must parse as a double.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  [[nodiscard]] std::size_t column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) {
        return i;
      }
    }
    throw ConfigError("csv column '" + std::string(name) + "' not found");
  }
};

inline Table read(std::istream& is) {
  Table table;
  std::string line;
  if (!std::getline(is, line)) {
    throw ConfigError("csv input is empty");
  }
  for (auto cell : split_line(line)) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) {
      cell.remove_suffix(1);
    }
    table.header.emplace_back(cell);
  }
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line == "\r") {
      continue;
    }
    const auto cells = split_line(line);
    if (cells.size() != table.header.size()) {
      throw ConfigError("csv line " + std::to_string(line_no) + " has " +
                        std::to_string(cells.size()) + " fields, expected " +
                        std::to_string(table.header.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (auto cell : cells) {
      row.push_back(parse_double(cell));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

inline Table read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open " + path);
  }
  return read(in);
}

} // namespace alberich::csv
