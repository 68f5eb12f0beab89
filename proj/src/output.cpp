#include "hsign/output.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "hsign/error.hpp"

namespace hsign {

OutputFormat parse_format(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw ConfigError("format must be csv or json, got '" + std::string(text) + "'");
}

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

namespace {

std::string csv_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_real(v);
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return std::to_string(v);
        }
      },
      cell);
}

nlohmann::json json_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
          return std::stod(format_real(v));
        } else {
          return v;
        }
      },
      cell);
}

}  // namespace

nlohmann::ordered_json to_json(const Record& record) {
  nlohmann::ordered_json obj = nlohmann::ordered_json::object();
  for (const auto& [key, value] : record.fields) obj[key] = json_cell(value);
  return obj;
}

void write_table(const Table& table, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::Csv) {
    for (const std::string& c : table.comments) out << "# " << c << '\n';
    if (table.rows.empty()) return;
    bool first = true;
    for (const auto& [key, _] : table.rows.front().fields) {
      out << (first ? "" : ",") << key;
      first = false;
    }
    out << '\n';
    for (const Record& r : table.rows) {
      first = true;
      for (const auto& [_, value] : r.fields) {
        out << (first ? "" : ",") << csv_cell(value);
        first = false;
      }
      out << '\n';
    }
    return;
  }
  if (table.single_record && table.rows.size() == 1) {
    out << to_json(table.rows.front()).dump(2) << '\n';
    return;
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Record& r : table.rows) arr.push_back(to_json(r));
  out << arr.dump(2) << '\n';
}

}  // namespace hsign
