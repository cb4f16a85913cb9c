#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>

#include "kpztail/error.hpp"
#include "kpztail/painleve.hpp"
#include "kpztail/specfun.hpp"

namespace kpztail::painleve {

namespace {

namespace odeint = boost::numeric::odeint;

// u, u', int_x^{x_start} u^2, int_x^{x_start} y u^2
using State = std::array<double, 4>;

// Right-to-left integration is unstable for gamma = 1 once the solution leaves the Airy regime;
// the left part of the Hastings-McLeod solution is obtained as a boundary value problem instead.
constexpr double kJoin = -2.0;
constexpr double kBvpLeft = -24.0;
constexpr double kLocalFactor = 0.05;

struct Tails {
  double mass;
  double moment;
};

// Exact tails of u = sqrt(gamma) Ai beyond X.
Tails airy_tails(double gamma, double X) {
  const auto a = specfun::airy_ai(X);
  return {gamma * (a.ai_prime * a.ai_prime - X * a.ai * a.ai),
          -gamma * (X * X * a.ai * a.ai - X * a.ai_prime * a.ai_prime + a.ai * a.ai_prime) / 3.0};
}

void solve_tridiagonal(std::vector<double>& lower, std::vector<double>& diag, std::vector<double>& upper,
                       std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double m = lower[i] / diag[i - 1];
    diag[i] -= m * upper[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

// Numerov discretization of u'' = x u + 2u^3 on nodes x_0 > x_1 > ... > x_N (spacing h),
// with u_0 and u_N prescribed. Newton iteration on the tridiagonal system.
std::vector<double> numerov_bvp(const std::vector<double>& x, double h, double u_right, double u_left) {
  const std::size_t n = x.size();
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = hastings_mcleod_left(std::min(x[i], -1.0));
  u.front() = u_right;
  u.back() = u_left;
  const double c = h * h / 12.0;
  auto f = [&](std::size_t i) { return x[i] * u[i] + 2.0 * u[i] * u[i] * u[i]; };
  auto fu = [&](std::size_t i) { return x[i] + 6.0 * u[i] * u[i]; };
  const std::size_t m = n - 2;
  std::vector<double> lo(m), di(m), up(m), r(m);
  for (int it = 0; it < 50; ++it) {
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t i = k + 1;
      r[k] = -(u[i + 1] - 2.0 * u[i] + u[i - 1] - c * (f(i + 1) + 10.0 * f(i) + f(i - 1)));
      di[k] = -2.0 - 10.0 * c * fu(i);
      lo[k] = 1.0 - c * fu(i - 1);
      up[k] = 1.0 - c * fu(i + 1);
    }
    solve_tridiagonal(lo, di, up, r);
    double worst = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      u[k + 1] += r[k];
      worst = std::max(worst, std::fabs(r[k]));
    }
    if (!std::isfinite(worst)) break;
    if (worst < 1e-14) return u;
  }
  raise(ErrorKind::Divergence, "Hastings-McLeod boundary value solve did not converge",
        {{"x_left", x.back()}, {"x_right", x.front()}});
}

}  // namespace

Painleve2Solution solve_painleve2(double gamma, double x_min, double x_start, double rel_tol) {
  if (!(gamma >= 0.0)) raise(ErrorKind::Domain, "solve_painleve2 needs gamma >= 0", {{"gamma", gamma}});
  if (gamma > 1.0) raise(ErrorKind::Domain, "gamma > 1 leads to real poles; not supported", {{"gamma", gamma}});
  if (!(x_start >= 6.0 && x_start <= 12.0))
    raise(ErrorKind::Domain, "solve_painleve2 needs x_start in [6, 12]", {{"x_start", x_start}});
  if (!(x_min >= -60.0 && x_min < x_start))
    raise(ErrorKind::Domain, "solve_painleve2 needs -60 <= x_min < x_start", {{"x_min", x_min}, {"x_start", x_start}});
  if (!(rel_tol >= 1e-12 && rel_tol <= 1e-6))
    raise(ErrorKind::Domain, "solve_painleve2 needs rel_tol in [1e-12, 1e-6]", {{"rel_tol", rel_tol}});

  Painleve2Solution sol;
  sol.gamma = gamma;
  sol.x_start = x_start;
  sol.rel_tol = rel_tol;

  const int steps = static_cast<int>(std::ceil((x_start - x_min) / kGridSpacing));
  const double h = (x_start - x_min) / steps;
  sol.grid.resize(steps + 1);
  for (int i = 0; i <= steps; ++i) sol.grid[i] = x_start - i * h;
  sol.grid.back() = x_min;

  const auto anchor = specfun::airy_ai(x_start);
  const double root_gamma = std::sqrt(gamma);
  State y{root_gamma * anchor.ai, root_gamma * anchor.ai_prime, 0.0, 0.0};
  sol.abs_tol = std::max(1e-300, 1e-3 * rel_tol * std::fabs(y[0]));

  // The Hastings-McLeod path hands over to the boundary value solver at the grid point nearest kJoin.
  const bool hm = gamma == 1.0 && x_min < kJoin;
  const int join = hm ? static_cast<int>(std::lround((x_start - kJoin) / h)) : steps;

  std::vector<State> states;
  states.reserve(join + 1);
  auto rhs = [](const State& s, State& d, double x) {
    const double u2 = s[0] * s[0];
    d[0] = s[1];
    d[1] = x * s[0] + 2.0 * u2 * s[0];
    d[2] = -u2;
    d[3] = -x * u2;
  };
  double last_x = x_start;
  auto observer = [&](const State& s, double x) {
    if (!std::isfinite(s[0]) || std::fabs(s[0]) > 1e8)
      raise(ErrorKind::Divergence, "Painleve II solution blew up", {{"x", x}, {"gamma", gamma}});
    last_x = x;
    states.push_back(s);
  };
  try {
    // Local error is held well below the requested tolerance so the accumulated error meets it.
    const double local = std::max(kLocalFactor * rel_tol, 1e-14);
    auto stepper = odeint::make_dense_output(kLocalFactor * sol.abs_tol, local, odeint::runge_kutta_dopri5<State>());
    odeint::integrate_times(stepper, rhs, y, sol.grid.begin(), sol.grid.begin() + join + 1, -h, observer);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    raise(ErrorKind::Divergence, std::string("step-size collapse: ") + e.what(), {{"x", last_x}, {"gamma", gamma}});
  }

  const std::size_t n = sol.grid.size();
  sol.u.resize(n);
  sol.u_prime.resize(n);
  sol.tail_mass.resize(n);
  sol.tail_moment.resize(n);
  const Tails tail = airy_tails(gamma, x_start);
  for (int i = 0; i <= join; ++i) {
    sol.u[i] = states[i][0];
    sol.u_prime[i] = states[i][1];
    sol.tail_mass[i] = tail.mass + states[i][2];
    sol.tail_moment[i] = tail.moment + states[i][3];
  }
  if (!hm) return sol;

  // Boundary value part on a grid of half the output spacing, extended past x_min to the point
  // where the left asymptotic series is accurate to ~1e-14.
  const double hb = 0.5 * h;
  const double x_join = sol.grid[join];
  const double x_left_target = std::min(x_min, kBvpLeft) - 10.0 * hb;
  const int nb = static_cast<int>(std::ceil((x_join - x_left_target) / hb));
  std::vector<double> xb(nb + 1);
  for (int i = 0; i <= nb; ++i) xb[i] = x_join - i * hb;
  const auto ub = numerov_bvp(xb, hb, sol.u[join], hastings_mcleod_left(xb.back()));

  std::vector<double> upb(nb + 1);
  upb[0] = sol.u_prime[join];
  for (int i = 1; i < nb; ++i) {
    const double fp = xb[i - 1] * ub[i - 1] + 2.0 * std::pow(ub[i - 1], 3);
    const double fm = xb[i + 1] * ub[i + 1] + 2.0 * std::pow(ub[i + 1], 3);
    // Numerov-consistent derivative, fourth order: nodes run right to left.
    upb[i] = (ub[i - 1] - ub[i + 1]) / (2.0 * hb) - hb * (fp - fm) / 12.0;
  }

  double mass = sol.tail_mass[join], moment = sol.tail_moment[join];
  for (int j = join + 1; j < static_cast<int>(n); ++j) {
    // Output grid point j sits at bvp node 2(j - join).
    const int b = 2 * (j - join);
    for (int i = b - 2; i < b; ++i) {
      const double xa = xb[i], xc = xb[i + 1];
      const double ga = ub[i] * ub[i], gc = ub[i + 1] * ub[i + 1];
      const double dga = 2.0 * ub[i] * upb[i], dgc = 2.0 * ub[i + 1] * upb[i + 1];
      // Hermite rule on [xc, xa] for u^2 and y u^2.
      mass += hb / 2.0 * (ga + gc) + hb * hb / 12.0 * (dgc - dga);
      moment += hb / 2.0 * (xa * ga + xc * gc) + hb * hb / 12.0 * ((gc + xc * dgc) - (ga + xa * dga));
    }
    sol.u[j] = ub[b];
    sol.u_prime[j] = upb[b];
    sol.tail_mass[j] = mass;
    sol.tail_moment[j] = moment;
  }
  return sol;
}

double f_via_integral(double x, double v) {
  if (!(x >= -40.0 && x <= 6.0)) raise(ErrorKind::Domain, "f_via_integral needs x in [-40, 6]", {{"x", x}});
  if (!(v >= 0.0 && v <= 30.0)) raise(ErrorKind::Domain, "f_via_integral needs v in [0, 30]", {{"v", v}});
  if (v == 0.0) return 0.0;
  const double gamma = -std::expm1(-v);
  const auto sol = solve_painleve2(gamma, x);
  return sol.log_f(sol.grid.size() - 1);
}

}  // namespace kpztail::painleve
