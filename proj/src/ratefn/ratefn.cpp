#include "kpztail/ratefn.hpp"

#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "kpztail/error.hpp"

namespace kpztail::ratefn {

namespace {

constexpr double kPi = std::numbers::pi;
const double kPi2 = kPi * kPi;
const double kPi6 = kPi2 * kPi2 * kPi2;

}  // namespace

double phi_minus(double z) {
  if (!(z <= 0.0)) raise(ErrorKind::Domain, "phi_minus needs z <= 0", {{"z", z}});
  const double w = -kPi2 * z;
  // (4/15 pi^6) [(1+w)^(5/2) - 1 - 5w/2 - 15 w^2/8]; the bracket is summed as a binomial
  // series for small w, where the closed form cancels.
  double bracket;
  if (w < 0.5) {
    double c = 5.0 / 16.0, wk = w * w * w;
    bracket = 0.0;
    for (int k = 3; k < 200; ++k) {
      const double term = c * wk;
      bracket += term;
      if (std::fabs(term) <= 1e-17 * std::fabs(bracket)) break;
      c *= (2.5 - k) / (k + 1.0);
      wk *= w;
    }
  } else {
    bracket = std::pow(1.0 + w, 2.5) - 1.0 - 2.5 * w - 1.875 * w * w;
  }
  return 4.0 / (15.0 * kPi6) * bracket;
}

double phi_tilde(double z) {
  if (!(z < 0.0)) raise(ErrorKind::Domain, "phi_tilde needs z < 0", {{"z", z}});
  const double w = -kPi2 * z;
  const double Z = std::sqrt(4.0 + w);
  const double d = w / (Z + 2.0);  // Z - 2
  // 8 - z pi^2 - 4Z = (Z - 2)^2, so the printed form reduces to d^3 (40 + 2w + 12d).
  return 2.0 / (15.0 * kPi6) * d * d * d * (40.0 + 2.0 * w + 12.0 * d);
}

RatePoint rate_point(double z) {
  if (z == 0.0) return {0.0, 0.0, 0.0, 1.0};
  const double pm = phi_minus(z), pt = phi_tilde(z);
  return {z, pm, pt, pt / pm};
}

double conditional_density(double a, double r) {
  if (!std::isfinite(a)) raise(ErrorKind::Domain, "conditional_density needs finite a", {{"a", a}});
  if (!(r <= 0.0)) raise(ErrorKind::Domain, "conditional_density needs r <= 0", {{"r", r}});
  if (a > r) return 0.0;
  if (a == r) return r < 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return (r - 2.0 * a) / (2.0 * kPi * std::sqrt(r - a));
}

double variational_integral(double z, double r) {
  if (!(z <= r && r <= 0.0))
    raise(ErrorKind::Domain, "variational_integral needs z <= r <= 0", {{"z", z}, {"r", r}});
  const double D = r - z;
  const double s = std::sqrt(D);
  return 4.0 / (15.0 * kPi) * D * D * s - 2.0 * r / (3.0 * kPi) * D * s;
}

double variational_objective(double z, double r) { return variational_integral(z, r) - r * r * r / 12.0; }

double variational_argmin_closed(double z) { return 4.0 / kPi2 * (2.0 - std::sqrt(4.0 - z * kPi2)); }

VariationalResult variational_min(double z) {
  if (!(z < 0.0)) raise(ErrorKind::Domain, "variational_min needs z < 0", {{"z", z}});
  const auto r = boost::math::tools::brent_find_minima([z](double x) { return variational_objective(z, x); }, z,
                                                       0.0, std::numeric_limits<double>::digits / 2);
  return {r.first, r.second};
}

}  // namespace kpztail::ratefn
