#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace radialqc {

using Cell = std::variant<double, std::int64_t, std::string>;

/// Column-ordered result table shared by the CLI commands.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

/// 17 significant digits, locale independent; "inf"/"-inf"/"nan" otherwise.
std::string format_double(double value);

/// RFC 4180: fields with a comma, quote, CR or LF are quoted, quotes doubled.
std::string csv_escape(const std::string& field);

/// Header row then one line per row, CRLF-free ("\n") line endings.
void write_csv(std::ostream& out, const Table& table);

/// Array of row objects keyed by column name. Non-finite doubles become null.
nlohmann::ordered_json table_rows_json(const Table& table);

}  // namespace radialqc
