#pragma once

namespace kpztail::ratefn {

struct RatePoint {
  double z;
  double phi_minus;
  double phi_tilde;
  double ratio;  // phi_tilde / phi_minus, limit 1 at z = 0
};

struct VariationalResult {
  double r_star;
  double value;
};

double phi_minus(double z);
double phi_tilde(double z);
RatePoint rate_point(double z);

// mu*_r(a) = (r - 2a) / (2 pi sqrt(r - a)) for a < r, 0 for a > r.
double conditional_density(double a, double r);

// int mu*_r(a) (a - z)_+ da in closed form, for z <= r <= 0.
double variational_integral(double z, double r);

// g(r) = variational_integral(z, r) + (-r)^3 / 12.
double variational_objective(double z, double r);

// Argmin and minimum of g over r in [z, 0].
VariationalResult variational_min(double z);

// Closed-form minimizer 4 pi^-2 (2 - sqrt(4 - z pi^2)).
double variational_argmin_closed(double z);

}  // namespace kpztail::ratefn
