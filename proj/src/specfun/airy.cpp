#include "kpztail/specfun.hpp"

#include <cmath>
#include <numbers>

#include "kpztail/error.hpp"

namespace kpztail::specfun {

namespace {

using quad = __float128;

// Ai(0) and -Ai'(0) split into double-double pieces.
const quad kC1 = static_cast<quad>(0.3550280538878172) + static_cast<quad>(2.05233632436212e-17);
const quad kC2 = static_cast<quad>(0.2588194037928068) + static_cast<quad>(-2.522243111610832e-17);

double abs_q(quad v) { return static_cast<double>(v < 0 ? -v : v); }

}  // namespace

namespace detail {

// Maclaurin series. The terms reach ~1e8 at |x| = 9, so the sums are carried in
// binary128 to keep the cancellation for negative x harmless.
AiryValue airy_series(double xd) {
  const quad x = xd;
  const quad x3 = x * x * x;
  quad f = 1, g = x, fp = x * x / 2, gp = 1;
  quad tf = 1, tg = x, tfp = x * x / 2, tgp = 1;
  for (int k = 1; k < 400; ++k) {
    const quad k3 = 3 * k;
    tf *= x3 / (k3 * (k3 - 1));
    tg *= x3 / ((k3 + 1) * k3);
    tgp *= x3 / (k3 * (k3 - 2));
    f += tf;
    g += tg;
    if (k >= 2) {
      tfp *= x3 / ((k3 - 1) * (k3 - 3));
      fp += tfp;
    }
    gp += tgp;
    const double scale = 1.0 + abs_q(f) + abs_q(g) + abs_q(fp) + abs_q(gp);
    if (abs_q(tf) + abs_q(tg) + abs_q(tfp) + abs_q(tgp) < 1e-33 * scale) break;
  }
  return {static_cast<double>(kC1 * f - kC2 * g), static_cast<double>(kC1 * fp - kC2 * gp)};
}

// DLMF 9.7.5-9.7.10 with optimal truncation.
AiryValue airy_asymptotic(double x) {
  const long double t = std::fabs(static_cast<long double>(x));
  const long double zeta = 2.0L / 3.0L * t * std::sqrt(t);
  const long double sqrt_pi = std::sqrt(std::numbers::pi_v<long double>);
  const long double t4 = std::sqrt(std::sqrt(t));

  // u_k, v_k divided by zeta^k, with the running smallest magnitude used as a stop.
  constexpr int kMax = 120;
  long double u[kMax], v[kMax];
  u[0] = 1;
  v[0] = 1;
  int n = 1;
  long double last = 1;
  for (int k = 1; k < kMax; ++k) {
    const long double uk = u[k - 1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) /
                           ((2 * k - 1) * 216.0L * k) / zeta;
    const long double vk = -(6.0L * k + 1) / (6.0L * k - 1) * uk;
    const long double mag = std::fabs(uk) + std::fabs(vk);
    if (mag > last) break;
    u[k] = uk;
    v[k] = vk;
    n = k + 1;
    last = mag;
    if (mag < 1e-20L) break;
  }

  if (x > 0) {
    long double su = 0, sv = 0;
    for (int k = n - 1; k >= 0; --k) {
      const long double sign = (k % 2 == 0) ? 1 : -1;
      su += sign * u[k];
      sv += sign * v[k];
    }
    const long double e = std::exp(-zeta) / (2 * sqrt_pi);
    return {static_cast<double>(e / t4 * su), static_cast<double>(-e * t4 * sv)};
  }

  long double pu = 0, qu = 0, pv = 0, qv = 0;
  for (int k = n - 1; k >= 0; --k) {
    const long double sign = ((k / 2) % 2 == 0) ? 1 : -1;
    if (k % 2 == 0) {
      pu += sign * u[k];
      pv += sign * v[k];
    } else {
      qu += sign * u[k];
      qv += sign * v[k];
    }
  }
  const long double phase = zeta - std::numbers::pi_v<long double> / 4;
  const long double c = std::cos(phase), s = std::sin(phase);
  return {static_cast<double>((c * pu + s * qu) / (sqrt_pi * t4)),
          static_cast<double>(t4 / sqrt_pi * (s * pv - c * qv))};
}

}  // namespace detail

AiryValue airy_ai(double x) {
  if (!std::isfinite(x)) raise(ErrorKind::Domain, "airy_ai: non-finite argument", {{"x", x}});
  if (std::fabs(x) <= detail::kAirySeam) return detail::airy_series(x);
  return detail::airy_asymptotic(x);
}

}  // namespace kpztail::specfun
