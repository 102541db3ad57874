#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "knapfeat/errors.hpp"
#include "knapfeat/features.hpp"

namespace knapfeat {

/// Shortest decimal form that parses back to the same double. Infinities
/// render as "inf"/"-inf"; the latter is the serialized form of a zero
/// log-domain count.
inline std::string format_double(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, end);
}

/// Parses a CSV cell: "NA" means absent, "inf"/"-inf" are infinities.
inline std::optional<double> parse_csv_value(std::string_view cell) {
  if (cell == "NA") return std::nullopt;
  double value = 0.0;
  const auto [next, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || next != cell.data() + cell.size())
    throw MalformedInput("cannot parse numeric cell '" + std::string(cell) + "'");
  return value;
}

inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.emplace_back(line.substr(start));
      return cells;
    }
    cells.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

/// A parsed CSV table with a header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw MalformedInput("required column '" + std::string(name) + "' is missing");
  }

  bool has_column(std::string_view name) const {
    for (const std::string& h : header)
      if (h == name) return true;
    return false;
  }
};

inline CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  if (!std::getline(is, line)) throw MalformedInput("empty CSV input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  table.header = split_csv_line(line);
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != table.header.size())
      throw MalformedInput("CSV row has " + std::to_string(cells.size()) +
                           " cells, header has " + std::to_string(table.header.size()));
    table.rows.push_back(std::move(cells));
  }
  return table;
}

inline constexpr const char* kSolveDiagnosticColumn = "solve_optimal_seconds_diagnostic";

/// Writes the canonical feature CSV: an instance column, the 14 features
/// in canonical order, absent entries as "NA". The optional solver timing
/// column is a diagnostic, not one of the features.
inline void write_feature_csv(std::ostream& os,
                              std::span<const std::pair<std::string, FeatureVector>> rows,
                              bool solver_diagnostic = false) {
  os << "instance";
  for (const char* name : kFeatureNames) os << ',' << name;
  if (solver_diagnostic) os << ',' << kSolveDiagnosticColumn;
  os << '\n';
  for (const auto& [id, features] : rows) {
    os << id;
    for (const std::optional<double>& value : feature_values(features))
      os << ',' << (value ? format_double(*value) : "NA");
    if (solver_diagnostic)
      os << ','
         << (features.solve_seconds ? format_double(*features.solve_seconds) : "NA");
    os << '\n';
  }
}

}  // namespace knapfeat
