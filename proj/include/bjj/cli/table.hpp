#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bjj::cli {

enum class Format { csv, json };

Format parse_format(const std::string& name);

/// A rectangular numeric result plus its provenance header.
///
/// CSV layout:
///   # tool-version <v>
///   # params: k=v k=v ...
///   # format-version 1
///   [# timestamp <iso>]
///   col1,col2,...
///   rows...
///   [# trailing comment lines]
struct Table {
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> trailing;
  std::optional<std::string> timestamp;

  void add_param(std::string key, double value);
  void add_param(std::string key, std::string value);
};

/// 12 significant digits, %g style; -0 is printed as 0.
std::string format_number(double v);

void write_csv(std::ostream& os, const Table& table);
/// Same header and rows as CSV; every number is the value of its CSV cell.
void write_json(std::ostream& os, const Table& table);
void write_table(std::ostream& os, const Table& table, Format format);

/// Writes to `path`, or to `fallback` when path is empty or "-". Throws IoError.
void write_table_to(const std::string& path, std::ostream& fallback, const Table& table,
                    Format format);

}  // namespace bjj::cli
