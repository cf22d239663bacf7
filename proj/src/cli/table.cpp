#include "bjj/cli/table.hpp"

#include "bjj/errors.hpp"
#include "bjj/version.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>

namespace bjj::cli {

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw ParameterError("format", "unknown output format '" + name + "' (expected csv or json)");
}

void Table::add_param(std::string key, double value) {
  params.emplace_back(std::move(key), format_number(value));
}

void Table::add_param(std::string key, std::string value) {
  params.emplace_back(std::move(key), std::move(value));
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(std::ostream& os, const Table& table) {
  os << "# tool-version " << kToolVersion << '\n';
  os << "# params:";
  for (const auto& [k, v] : table.params) os << ' ' << k << '=' << v;
  os << '\n';
  os << "# format-version " << kFormatVersion << '\n';
  if (table.timestamp) os << "# timestamp " << *table.timestamp << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c) os << (c ? "," : "") << table.columns[c];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_number(row[c]);
    os << '\n';
  }
  for (const auto& line : table.trailing) os << "# " << line << '\n';
}

void write_json(std::ostream& os, const Table& table) {
  nlohmann::ordered_json doc;
  doc["tool_version"] = kToolVersion;
  doc["format_version"] = kFormatVersion;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : table.params) params[k] = v;
  doc["params"] = params;
  if (table.timestamp) doc["timestamp"] = *table.timestamp;
  doc["columns"] = table.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    // Round-trip through the CSV rendering so both formats carry equal values.
    for (double v : row) r.push_back(std::strtod(format_number(v).c_str(), nullptr));
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  doc["summary"] = table.trailing;
  os << doc.dump(1) << '\n';
}

void write_table(std::ostream& os, const Table& table, Format format) {
  if (format == Format::json)
    write_json(os, table);
  else
    write_csv(os, table);
}

void write_table_to(const std::string& path, std::ostream& fallback, const Table& table,
                    Format format) {
  if (path.empty() || path == "-") {
    write_table(fallback, table, format);
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open output file '" + path + "' for writing");
  write_table(file, table, format);
  file.flush();
  if (!file) throw IoError("failed writing output file '" + path + "'");
}

}  // namespace bjj::cli
