#include "kpztail/tailbounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <mutex>
#include <sstream>

#include "kpztail/airyprocess.hpp"
#include "kpztail/error.hpp"
#include "kpztail/parallel.hpp"

namespace kpztail::tailbounds {

namespace {

constexpr double kPi = std::numbers::pi;

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

// Airy zeros are shared across calls; the table only grows.
double airy_zero(int k) {
  static std::mutex guard;
  static std::vector<double> table;
  std::lock_guard<std::mutex> lock(guard);
  while (static_cast<int>(table.size()) < k)
    table.push_back(airyprocess::airy_eigenvalue(static_cast<int>(table.size()) + 1));
  return table[k - 1];
}

}  // namespace

double neg_log_q_estimate(double s, double T) {
  if (s <= 0.0) return 0.0;
  return std::min(s * s * s / 12.0, 4.0 / (15.0 * kPi) * std::cbrt(T) * std::pow(s, 2.5));
}

std::vector<double> local_exponents(const std::vector<double>& s, const std::vector<double>& L) {
  if (s.size() != L.size() || s.size() < 3)
    raise(ErrorKind::Domain, "local exponents need matching grids of at least 3 points",
          {{"size", static_cast<double>(s.size())}});
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!(s[i] > 0.0) || !(L[i] > 0.0))
      raise(ErrorKind::Domain, "local exponents need positive s and L", {{"s", s[i]}, {"L", L[i]}});
  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < s.size(); ++i)
    out.push_back((std::log(L[i + 1]) - std::log(L[i - 1])) /
                  (std::log(s[i + 1]) - std::log(s[i - 1])));
  return out;
}

TailCurve crossover_curve(double T, const std::vector<double>& s_grid, int order, int workers) {
  if (!(T > 0.0)) raise(ErrorKind::Domain, "T must be positive", {{"T", T}});
  if (s_grid.size() < 3)
    raise(ErrorKind::Domain, "crossover grid needs at least 3 points",
          {{"size", static_cast<double>(s_grid.size())}});
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    if (!(s_grid[i] > 0.0)) raise(ErrorKind::Domain, "crossover grid must be positive", {{"s", s_grid[i]}});
    if (i > 0 && !(s_grid[i] > s_grid[i - 1]))
      raise(ErrorKind::Domain, "crossover grid must be increasing", {{"s", s_grid[i]}});
  }
  ErrorContext offending;
  for (double s : s_grid)
    if (neg_log_q_estimate(s, T) > fredholm::kTrustBound) offending.emplace_back("s", s);
  if (!offending.empty()) {
    std::ostringstream msg;
    msg << "grid exceeds the -log Q <= " << fredholm::kTrustBound << " trust bound at s =";
    for (const auto& [k, v] : offending) msg << ' ' << v;
    offending.emplace_back("T", T);
    raise(ErrorKind::IllConditioned, msg.str(), offending);
  }

  TailCurve c;
  c.T = T;
  c.s_grid = s_grid;
  c.neg_log_q.assign(s_grid.size(), 0.0);
  parallel_for(s_grid.size(), workers, [&](std::size_t i) {
    c.neg_log_q[i] = -fredholm::kpz_log_laplace(s_grid[i], T, order);
  });
  c.local_exponent = local_exponents(c.s_grid, c.neg_log_q);
  return c;
}

double crossover_scale(double T) {
  const double r = std::cbrt(T) * 16.0 / (5.0 * kPi);
  return r * r;
}

std::optional<double> slope_crossing(const TailCurve& curve, double target) {
  const auto& e = curve.local_exponent;
  for (std::size_t i = 0; i + 1 < e.size(); ++i) {
    const double a = e[i] - target, b = e[i + 1] - target;
    if (a == 0.0) return curve.s_grid[i + 1];
    if (a * b < 0.0) {
      const double la = std::log(curve.s_grid[i + 1]), lb = std::log(curve.s_grid[i + 2]);
      return std::exp(la + (lb - la) * a / (a - b));
    }
  }
  return std::nullopt;
}

double heuristic_sum(double s, double T, int k_max) {
  if (!(T > 0.0)) raise(ErrorKind::Domain, "T must be positive", {{"T", T}});
  if (k_max < 1) raise(ErrorKind::Domain, "k_max must be positive", {{"k_max", static_cast<double>(k_max)}});
  const double beta = std::cbrt(T);
  const double needed = s + 40.0 / beta;
  if (airy_zero(k_max) < needed) {
    int k = k_max;
    while (airy_zero(k) < needed) ++k;
    raise(ErrorKind::Truncation, "k_max too small for the heuristic sum; need lambda_k >= s + 40/T^(1/3)",
          {{"s", s}, {"T", T}, {"k_max", static_cast<double>(k_max)}, {"k_required", static_cast<double>(k)}});
  }
  // Terms decrease with k, so summing from k_max down adds the small ones first.
  double sum = 0.0;
  for (int k = k_max; k >= 1; --k) sum += softplus(beta * (s - airy_zero(k)));
  return sum;
}

TheoremBounds theorem_bounds(double s, double T, double epsilon, double delta, double C,
                             double K1, double K2) {
  if (!(epsilon > 0.0 && epsilon < 1.0 / 3.0))
    raise(ErrorKind::Domain, "epsilon must lie in (0, 1/3)", {{"epsilon", epsilon}});
  if (!(delta > 0.0 && delta < 1.0 / 3.0))
    raise(ErrorKind::Domain, "delta must lie in (0, 1/3)", {{"delta", delta}});
  if (!(s > 0.0) || !(T > 0.0)) raise(ErrorKind::Domain, "s and T must be positive", {{"s", s}, {"T", T}});
  if (!(C >= 0.0) || !(K1 >= 0.0) || !(K2 >= 0.0))
    raise(ErrorKind::Domain, "constants must be nonnegative", {{"C", C}, {"K1", K1}, {"K2", K2}});
  const double beta = std::cbrt(T);
  const double s52 = std::pow(s, 2.5), s3 = s * s * s;
  TheoremBounds b;
  b.upper = std::exp(-4.0 * (1.0 - C * epsilon) / (15.0 * kPi) * beta * s52) +
            std::exp(-K1 * std::pow(s, 3.0 - delta) - epsilon * beta * s) +
            std::exp(-(1.0 - C * epsilon) / 12.0 * s3);
  b.lower = std::exp(-4.0 * (1.0 + C * epsilon) / (15.0 * kPi) * beta * s52) + std::exp(-K2 * s3);
  return b;
}

}  // namespace kpztail::tailbounds
