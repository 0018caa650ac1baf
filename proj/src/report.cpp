#include "ergolab/report.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "ergolab/error.hpp"

namespace ergolab {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void ExperimentReport::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw ShapeError("report '" + name + "': row has " + std::to_string(row.size()) +
                     " values, expected " + std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

std::size_t ExperimentReport::column_index(const std::string& column) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == column) return i;
  }
  throw RangeError("report '" + name + "' has no column '" + column + "'");
}

std::vector<double> ExperimentReport::column(const std::string& c) const {
  const std::size_t k = column_index(c);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[k]);
  return out;
}

double ExperimentReport::at(std::size_t row, const std::string& c) const {
  if (row >= rows.size()) throw RangeError("report '" + name + "': row out of range");
  return rows[row][column_index(c)];
}

std::string ExperimentReport::to_csv() const {
  std::ostringstream out;
  out << "# report=" << name << '\n';
  for (const auto& [key, value] : header.items()) {
    out << "# " << key << '=' << (value.is_string() ? value.get<std::string>() : value.dump())
        << '\n';
  }
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << format_double(r[i]);
    out << '\n';
  }
  return out.str();
}

Json ExperimentReport::to_json() const {
  Json j;
  j["report"] = name;
  j["header"] = header;
  j["columns"] = columns;
  j["rows"] = rows;
  j["summary"] = summary;
  return j;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot rename report into '" + path.string() + "'");
  }
}

}  // namespace ergolab
