#pragma once

#include <vector>

namespace kpztail::painleve {

// Solution of u'' = x u + 2 u^3 with u ~ sqrt(gamma) Ai at +inf, sampled on a decreasing grid.
// tail_mass and tail_moment hold int_x^inf u^2 dy and int_x^inf y u^2 dy at every grid point,
// including the closed-form part beyond x_start.
struct Painleve2Solution {
  double gamma = 0.0;
  double x_start = 8.0;
  std::vector<double> grid;
  std::vector<double> u;
  std::vector<double> u_prime;
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  std::vector<double> tail_mass;
  std::vector<double> tail_moment;

  // log F at grid point i: -int_x^inf (y - x) u^2 dy.
  double log_f(std::size_t i) const { return -(tail_moment[i] - grid[i] * tail_mass[i]); }
};

inline constexpr double kDefaultXStart = 8.0;
inline constexpr double kGridSpacing = 0.005;

Painleve2Solution solve_painleve2(double gamma, double x_min, double x_start = kDefaultXStart,
                                  double rel_tol = 1e-12);

double f_via_integral(double x, double v);

// Left asymptotic series of the Hastings-McLeod solution, valid for x << 0.
double hastings_mcleod_left(double x);

struct AsymptoticRegime {
  double tau;
  double kappa;
  double V;
  double x;
};

double tau_of_kappa(double kappa);
double kappa_solve(double tau);
double v_of_tau(double tau);
AsymptoticRegime asymptotic_regime(double x, double v);

enum class AsymptoticForm { Elliptic, Cosine };
double u_as_asymptotic(double x, double v, AsymptoticForm form = AsymptoticForm::Elliptic);

double bobu_expansion(double s, double v);

}  // namespace kpztail::painleve
