#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace kpztail::cli {

using Env = std::map<std::string, std::string>;

// Empty cells serialize as an empty CSV field or JSON null.
using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

enum class Format { Csv, Json };

inline constexpr std::uint64_t kDefaultSeed = 0;
inline constexpr const char* kStdout = "-";

// "a,b,c" or "start:stop:count". With log_spaced, a triple whose ends share a sign is
// spaced geometrically. Malformed or non-monotone grids raise a usage error.
std::vector<double> parse_grid(const std::string& text, bool log_spaced = false);

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> order;
};

struct Resolved {
  std::uint64_t seed = kDefaultSeed;
  int order = 0;
};

// Explicit values (command line, then --config, merged by the parser) win over the
// environment, which wins over the defaults.
Resolved resolve(const Overrides& explicit_values, const Env& env, int default_order);

std::string format_table(const Table& table, Format format);
void emit_table(const Table& table, Format format, const std::string& destination, std::ostream& out);

int parse_and_run(const std::vector<std::string>& argv, const Env& env, std::ostream& out,
                  std::ostream& err);

}  // namespace kpztail::cli
