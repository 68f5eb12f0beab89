#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace hsign {

enum class OutputFormat { Csv, Json };

OutputFormat parse_format(std::string_view text);

using Cell = std::variant<std::int64_t, double, std::string, bool>;

/// One output row: ordered (column, value) pairs.
struct Record {
  std::vector<std::pair<std::string, Cell>> fields;

  Record& add(std::string key, Cell value) {
    fields.emplace_back(std::move(key), std::move(value));
    return *this;
  }
};

/// Rows plus provenance comments. CSV: '#'-prefixed comment lines, a header
/// row, then data rows, LF line endings. JSON: the single record as an object
/// when `single_record`, otherwise an array of objects. Reals carry 12
/// significant digits in both formats.
struct Table {
  std::vector<std::string> comments;
  std::vector<Record> rows;
  bool single_record = false;
};

std::string format_real(double value);
nlohmann::ordered_json to_json(const Record& record);
void write_table(const Table& table, OutputFormat format, std::ostream& out);

}  // namespace hsign
