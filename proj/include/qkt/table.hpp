// table.hpp - tabular results with CSV and JSON writers
#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qkt/errors.hpp"

namespace qkt {

using Cell = std::variant<std::int64_t, double, std::string>;

// Shortest round-trip representation; identical across runs of the same
// binary, which the determinism guarantees rely on.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string format_int(std::int64_t v) {
  char buf[24];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct Table {
  std::string name;  // output file stem
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
      throw DimensionMismatch("table row width differs from column count");
    rows.push_back(std::move(row));
  }
};

namespace detail {

inline std::string csv_quote(const std::string& s) {
  const bool needs = s.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string cell_text(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return format_int(*i);
  if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
  return csv_quote(std::get<std::string>(cell));
}

}  // namespace detail

// Metadata as '# key=value' preamble lines, then the header row, then data.
inline std::string to_csv(const Table& table) {
  std::string out;
  for (const auto& [key, value] : table.meta)
    out += "# " + key + "=" + value + "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) out += ',';
    out += detail::csv_quote(table.columns[c]);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += ',';
      out += detail::cell_text(row[c]);
    }
    out += '\n';
  }
  return out;
}

// One object per table: meta map plus columns and a data array of rows.
inline std::string to_json(const Table& table) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.meta) meta[key] = value;
  j["meta"] = std::move(meta);
  j["columns"] = table.columns;
  nlohmann::ordered_json data = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json jr = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      if (const auto* i = std::get_if<std::int64_t>(&cell))
        jr.push_back(*i);
      else if (const auto* d = std::get_if<double>(&cell))
        jr.push_back(*d);
      else
        jr.push_back(std::get<std::string>(cell));
    }
    data.push_back(std::move(jr));
  }
  j["data"] = std::move(data);
  return j.dump(2) + "\n";
}

}  // namespace qkt
