#include <cmath>
#include <numbers>

#include "kpztail/error.hpp"
#include "kpztail/specfun.hpp"

namespace kpztail::specfun {

std::complex<double> log_barnes_g1p(std::complex<double> z) {
  const double r = std::abs(z);
  if (!(r < 1.0))
    raise(ErrorKind::Range, "log_barnes_g1p: Taylor series needs |z| < 1", {{"abs_z", r}});
  constexpr double kEulerGamma = std::numbers::egamma;
  std::complex<double> sum =
      0.5 * z * std::log(2.0 * std::numbers::pi) - 0.5 * (z + (1.0 + kEulerGamma) * z * z);
  std::complex<double> zk1 = z * z * z;
  for (int k = 2; k < 20000; ++k) {
    const double zeta_k = (k < 60) ? std::riemann_zeta(static_cast<double>(k)) : 1.0;
    const std::complex<double> term = ((k % 2 == 0) ? 1.0 : -1.0) * zeta_k * zk1 / (k + 1.0);
    sum += term;
    if (std::abs(term) < 1e-17 * (std::abs(sum) + 1e-300) && k > 4) break;
    zk1 *= z;
  }
  return sum;
}

double barnes_g_sym(double v) {
  if (!(v >= 0.0))
    raise(ErrorKind::Domain, "barnes_g_sym: v must be nonnegative", {{"v", v}});
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (!(v < two_pi))
    raise(ErrorKind::Range, "barnes_g_sym: series converges only for v < 2*pi", {{"v", v}});
  if (v == 0.0) return 0.0;
  const std::complex<double> z(0.0, v / two_pi);
  return (log_barnes_g1p(z) + log_barnes_g1p(std::conj(z))).real();
}

}  // namespace kpztail::specfun
