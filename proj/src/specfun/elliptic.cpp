#include <cmath>
#include <limits>
#include <numbers>

#include "kpztail/error.hpp"
#include "kpztail/specfun.hpp"

namespace kpztail::specfun {

namespace {

constexpr double kPi = std::numbers::pi;

// K and E from (k, k') by the arithmetic-geometric mean:
//   K = pi / (2 AGM(1, k')),  E = K (1 - sum_n 2^(n-1) c_n^2).
EllipticPair agm_pair(double k, double kp) {
  if (kp == 0.0) return {k, std::numeric_limits<double>::infinity(), 1.0, true};
  double a = 1.0, b = kp, c = k;
  double sum = 0.5 * c * c;
  double pow2 = 0.5;
  for (int n = 0; n < 64; ++n) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    c = 0.5 * (a - b);
    a = an;
    b = bn;
    pow2 *= 2.0;
    sum += pow2 * c * c;
    if (std::fabs(c) <= 1e-17 * a) break;
  }
  const double K = kPi / (2.0 * a);
  return {k, K, K * (1.0 - sum), false};
}

}  // namespace

EllipticPair elliptic_ke(double kappa) {
  if (!(kappa >= 0.0 && kappa <= 1.0))
    raise(ErrorKind::Domain, "elliptic_ke: modulus outside [0,1]", {{"kappa", kappa}});
  const double kp = std::sqrt((1.0 - kappa) * (1.0 + kappa));
  return agm_pair(kappa, kp);
}

EllipticPair elliptic_ke_complement(double kappa_prime) {
  if (!(kappa_prime >= 0.0 && kappa_prime <= 1.0))
    raise(ErrorKind::Domain, "elliptic_ke_complement: modulus outside [0,1]",
          {{"kappa_prime", kappa_prime}});
  const double k = std::sqrt((1.0 - kappa_prime) * (1.0 + kappa_prime));
  return agm_pair(k, kappa_prime);
}

double jacobi_cd(double z, double kappa) {
  if (!(kappa >= 0.0 && kappa < 1.0))
    raise(ErrorKind::Domain, "jacobi_cd: modulus outside [0,1)", {{"kappa", kappa}});
  if (!std::isfinite(z)) raise(ErrorKind::Domain, "jacobi_cd: non-finite argument", {{"z", z}});
  if (kappa == 0.0) return std::cos(z);

  const double K = elliptic_ke(kappa).K;
  const double Kp = elliptic_ke_complement(kappa).K;
  const double q = std::exp(-kPi * Kp / K);

  // cd has period 4K, i.e. period 2 in zeta = z / (2K).
  double zeta = std::fmod(z / (2.0 * K), 2.0);
  if (zeta < 0) zeta += 2.0;

  // theta_2 is used without its 2 q^(1/4) prefactor; it cancels in the ratio.
  auto theta2 = [q](double x) {
    double sum = 0.0;
    for (int m = 0; m < 200; ++m) {
      const double w = std::pow(q, static_cast<double>(m) * (m + 1));
      sum += w * std::cos((2 * m + 1) * kPi * x);
      if (w < 1e-17) break;
    }
    return sum;
  };
  auto theta3 = [q](double x) {
    double sum = 1.0;
    for (int m = 1; m < 200; ++m) {
      const double w = std::pow(q, static_cast<double>(m) * m);
      sum += 2.0 * w * std::cos(2 * m * kPi * x);
      if (w < 1e-17) break;
    }
    return sum;
  };

  const double den = theta3(zeta);
  if (std::fabs(den) < 1e-10) {
    const double to_real = std::fabs(std::remainder(z - K, 2.0 * K));
    raise(ErrorKind::Domain, "jacobi_cd: argument too close to a pole",
          {{"z", z}, {"kappa", kappa}, {"pole_distance", std::hypot(to_real, Kp)}});
  }
  return theta3(0.0) * theta2(zeta) / (theta2(0.0) * den);
}

}  // namespace kpztail::specfun
