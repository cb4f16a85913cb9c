#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "kpztail/cli.hpp"
#include "kpztail/error.hpp"

namespace kpztail::cli {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::string csv_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", *d);
    return buf;
  }
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const auto* s = std::get_if<std::string>(&c)) return csv_field(*s);
  return {};
}

nlohmann::ordered_json json_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? nlohmann::ordered_json(*d) : nlohmann::ordered_json();
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  return nullptr;
}

}  // namespace

std::string format_table(const Table& table, Format format) {
  for (const auto& row : table.rows)
    if (row.size() != table.columns.size())
      raise(ErrorKind::Usage, "table rows must match the header",
            {{"columns", static_cast<double>(table.columns.size())}, {"row", static_cast<double>(row.size())}});
  if (format == Format::Json) {
    // ordered_json keeps the column order of the header.
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t j = 0; j < row.size(); ++j) obj[table.columns[j]] = json_cell(row[j]);
      arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
  }
  std::string s;
  for (std::size_t j = 0; j < table.columns.size(); ++j) s += (j ? "," : "") + csv_field(table.columns[j]);
  s += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) s += (j ? "," : "") + csv_cell(row[j]);
    s += "\n";
  }
  return s;
}

void emit_table(const Table& table, Format format, const std::string& destination, std::ostream& out) {
  const std::string text = format_table(table, format);
  if (destination.empty() || destination == kStdout) {
    out << text;
    out.flush();
    return;
  }
  std::ofstream f(destination, std::ios::binary | std::ios::trunc);
  if (!f) raise(ErrorKind::Io, "cannot open output file " + destination);
  f << text;
  f.close();
  if (!f) raise(ErrorKind::Io, "failed writing output file " + destination);
}

}  // namespace kpztail::cli
