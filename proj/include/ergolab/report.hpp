#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ergolab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

/// Tabular record of a parameter sweep.
///
/// `header` echoes the configuration (tool version, seed, parameters),
/// `rows` hold named numeric columns and `summary` carries derived values
/// such as slopes, empirical constants and pass flags.
struct ExperimentReport {
  std::string name;
  Json header = Json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  Json summary = Json::object();

  ExperimentReport() = default;
  ExperimentReport(std::string report_name, std::vector<std::string> cols)
      : name(std::move(report_name)), columns(std::move(cols)) {}

  void add_row(std::vector<double> row);
  std::size_t column_index(const std::string& column) const;
  std::vector<double> column(const std::string& column) const;
  double at(std::size_t row, const std::string& column) const;

  /// Header lines prefixed with '#', then the column row, then data rows.
  /// Values use 17 significant digits and '.' decimals.
  std::string to_csv() const;
  Json to_json() const;
};

/// Formats a double with 17 significant digits, independent of locale.
std::string format_double(double v);

/// Writes via a temporary file in the same directory and renames it over
/// `path`, so readers never observe a partial file.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace ergolab
