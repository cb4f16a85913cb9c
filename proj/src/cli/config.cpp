#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string_view>

#include "kpztail/cli.hpp"
#include "kpztail/error.hpp"

namespace kpztail::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double to_real(std::string_view s, const std::string& grid) {
  s = trim(s);
  double v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
    raise(ErrorKind::Usage, "malformed grid '" + grid + "'");
  return v;
}

template <class Int>
std::optional<Int> to_int(const std::string& s) {
  Int v{};
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text, bool log_spaced) {
  std::vector<double> g;
  if (text.find(':') != std::string::npos) {
    const auto a = text.find(':'), b = text.find(':', a + 1);
    if (b == std::string::npos || text.find(':', b + 1) != std::string::npos)
      raise(ErrorKind::Usage, "grid triple must be start:stop:count, got '" + text + "'");
    const double lo = to_real(std::string_view(text).substr(0, a), text);
    const double hi = to_real(std::string_view(text).substr(a + 1, b - a - 1), text);
    const auto n = to_int<long>(std::string(trim(std::string_view(text).substr(b + 1))));
    if (!n || *n < 1 || *n > 10000000) raise(ErrorKind::Usage, "grid count must be a positive integer in '" + text + "'");
    if (*n == 1) {
      if (lo != hi) raise(ErrorKind::Usage, "a one-point grid needs start == stop in '" + text + "'");
      return {lo};
    }
    const bool geometric = log_spaced && lo * hi > 0.0;
    for (long i = 0; i < *n; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(*n - 1);
      g.push_back(geometric ? std::copysign(std::exp(std::log(std::fabs(lo)) * (1 - t) + std::log(std::fabs(hi)) * t), lo)
                            : lo + (hi - lo) * t);
    }
    g.front() = lo;
    g.back() = hi;
  } else {
    std::size_t start = 0;
    while (true) {
      const auto comma = text.find(',', start);
      g.push_back(to_real(std::string_view(text).substr(start, comma == std::string::npos ? std::string::npos : comma - start), text));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  if (g.size() > 1) {
    const bool up = g[1] > g[0];
    for (std::size_t i = 1; i < g.size(); ++i)
      if (up ? !(g[i] > g[i - 1]) : !(g[i] < g[i - 1]))
        raise(ErrorKind::Usage, "grid '" + text + "' is not strictly monotone");
  }
  return g;
}

Resolved resolve(const Overrides& explicit_values, const Env& env, int default_order) {
  Resolved r;
  r.order = default_order;
  if (const auto it = env.find("KPZTAIL_SEED"); it != env.end()) {
    const auto v = to_int<std::uint64_t>(it->second);
    if (!v) raise(ErrorKind::Usage, "KPZTAIL_SEED must be a nonnegative integer, got '" + it->second + "'");
    r.seed = *v;
  }
  if (const auto it = env.find("KPZTAIL_QUAD_ORDER"); it != env.end()) {
    const auto v = to_int<int>(it->second);
    if (!v) raise(ErrorKind::Usage, "KPZTAIL_QUAD_ORDER must be an integer, got '" + it->second + "'");
    r.order = *v;
  }
  if (explicit_values.seed) r.seed = *explicit_values.seed;
  if (explicit_values.order) r.order = *explicit_values.order;
  return r;
}

}  // namespace kpztail::cli
