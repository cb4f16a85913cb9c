#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <numbers>

#include "kpztail/error.hpp"
#include "kpztail/painleve.hpp"
#include "kpztail/specfun.hpp"

namespace kpztail::painleve {

namespace {

constexpr double kPi = std::numbers::pi;
const double kTauMax = 2.0 * std::sqrt(2.0) / 3.0;

void check_tau(double tau, const char* who) {
  if (!(tau > 0.0 && tau < kTauMax))
    raise(ErrorKind::Domain, std::string(who) + ": tau outside (0, 2*sqrt(2)/3)", {{"tau", tau}});
}

}  // namespace

double tau_of_kappa(double kappa) {
  if (!(kappa >= 0.0 && kappa <= 1.0))
    raise(ErrorKind::Domain, "tau_of_kappa: kappa outside [0,1]", {{"kappa", kappa}});
  // K and E at the complementary modulus kappa', parametrized by kappa itself.
  const auto c = specfun::elliptic_ke_complement(kappa);
  const double k2 = kappa * kappa;
  if (c.K_divergent) return kTauMax;
  return 2.0 / 3.0 * std::sqrt(2.0 / (1.0 + k2)) * (c.E - 2.0 * k2 / (1.0 + k2) * c.K);
}

double kappa_solve(double tau) {
  check_tau(tau, "kappa_solve");
  auto f = [tau](double k) { return tau_of_kappa(k) - tau; };
  boost::uintmax_t iters = 200;
  auto tol = [](double a, double b) { return std::fabs(a - b) <= 1e-15; };
  const auto r = boost::math::tools::toms748_solve(f, 0.0, 1.0, kTauMax - tau, -tau, tol, iters);
  return 0.5 * (r.first + r.second);
}

double v_of_tau(double tau) {
  check_tau(tau, "v_of_tau");
  const double kappa = kappa_solve(tau);
  const auto p = specfun::elliptic_ke(kappa);
  const double k2 = kappa * kappa;
  return -2.0 / (3.0 * kPi) * std::sqrt(2.0 / (1.0 + k2)) * (p.E - (1.0 - k2) / (1.0 + k2) * p.K);
}

AsymptoticRegime asymptotic_regime(double x, double v) {
  if (!(x < 0.0)) raise(ErrorKind::Domain, "asymptotic regime needs x < 0", {{"x", x}});
  const double tau = v / std::pow(-x, 1.5);
  check_tau(tau, "asymptotic_regime");
  return {tau, kappa_solve(tau), v_of_tau(tau), x};
}

double u_as_asymptotic(double x, double v, AsymptoticForm form) {
  if (!(x <= -15.0)) raise(ErrorKind::Domain, "u_as_asymptotic needs -x >= 15", {{"x", x}});
  if (!(v > 0.0)) raise(ErrorKind::Domain, "u_as_asymptotic needs v > 0", {{"v", v}});
  const double t = -x;
  const double tau = v / std::pow(t, 1.5);
  if (!(tau < kTauMax - 0.05))
    raise(ErrorKind::Domain, "u_as_asymptotic: tau outside the oscillatory regime", {{"tau", tau}, {"x", x}, {"v", v}});
  const double V = v_of_tau(tau);
  if (form == AsymptoticForm::Cosine) {
    if (tau > std::pow(t, -0.3))
      raise(ErrorKind::Domain, "cosine form needs tau <= (-x)^(-0.3)", {{"tau", tau}, {"x", x}});
    return std::pow(t, -0.25) * std::sqrt(v / kPi) * std::cos(kPi * std::pow(t, 1.5) * V);
  }
  const double kappa = kappa_solve(tau);
  const double kr = (1.0 - kappa) / (1.0 + kappa);
  const double K = specfun::elliptic_ke(kr).K;
  const double arg = 2.0 * std::pow(t, 1.5) * V * K;
  return -std::sqrt(t / 2.0) * (1.0 - kappa) / std::sqrt(1.0 + kappa * kappa) * specfun::jacobi_cd(arg, kr);
}

double bobu_expansion(double s, double v) {
  if (!(s > 0.0)) raise(ErrorKind::Domain, "bobu_expansion needs s > 0", {{"s", s}});
  if (!(v >= 0.0 && v <= std::pow(s, 0.45)))
    raise(ErrorKind::Domain, "bobu_expansion needs 0 <= v <= s^(1/2-0.05)", {{"s", s}, {"v", v}});
  if (!(v < 2.0 * kPi)) raise(ErrorKind::Range, "bobu_expansion needs v < 2*pi", {{"v", v}});
  if (v == 0.0) return 0.0;
  const double s32 = s * std::sqrt(s);
  return -2.0 * v / (3.0 * kPi) * s32 + v * v / (4.0 * kPi * kPi) * std::log(8.0 * s32) + specfun::barnes_g_sym(v);
}

double hastings_mcleod_left(double x) {
  const double t = -x;
  const double i3 = 1.0 / (x * x * x);
  const double poly = 1.0 + i3 * (1.0 / 8.0 + i3 * (-73.0 / 128.0 + i3 * (10657.0 / 1024.0 + i3 * (-13912277.0 / 32768.0))));
  return std::sqrt(t / 2.0) * poly;
}

}  // namespace kpztail::painleve
