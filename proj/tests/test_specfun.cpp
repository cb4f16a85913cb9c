#include <boost/math/special_functions/airy.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "kpztail/error.hpp"
#include "kpztail/specfun.hpp"

using namespace kpztail;
using namespace kpztail::specfun;

namespace {

// AGM in long double as an oracle with extra digits.
long double agm_K(long double k) {
  long double a = 1, b = std::sqrt((1 - k) * (1 + k));
  for (int i = 0; i < 40; ++i) {
    const long double an = (a + b) / 2;
    b = std::sqrt(a * b);
    a = an;
  }
  return std::numbers::pi_v<long double> / (2 * a);
}

}  // namespace

TEST_CASE("airy at zero matches closed forms") {
  const auto v = airy_ai(0.0);
  CHECK(v.ai == doctest::Approx(0.35502805388781723926).epsilon(1e-15));
  CHECK(v.ai_prime == doctest::Approx(-0.25881940379280679841).epsilon(1e-15));
}

TEST_CASE("airy decays for large positive x") {
  const double a = airy_ai(10.0).ai;
  CHECK(a > 0.0);
  CHECK(a < 1e-9);
}

TEST_CASE("airy agrees with boost on [-60, 20]") {
  double worst = 0.0, worst_p = 0.0;
  for (double x = -60.0; x <= 20.0; x += 0.0137) {
    const auto v = airy_ai(x);
    worst = std::max(worst, std::fabs(v.ai - boost::math::airy_ai(x)));
    worst_p = std::max(worst_p, std::fabs(v.ai_prime - boost::math::airy_ai_prime(x)));
  }
  // Boost itself carries a few ulps times the derivative magnitude at x = -60.
  CHECK(worst < 1e-12);
  CHECK(worst_p < 5e-12);
}

TEST_CASE("airy branches agree at the seam") {
  for (double x : {-detail::kAirySeam, detail::kAirySeam}) {
    const auto s = detail::airy_series(x);
    const auto a = detail::airy_asymptotic(x);
    CHECK(std::fabs(s.ai - a.ai) <= 1e-11);
    CHECK(std::fabs(s.ai_prime - a.ai_prime) <= 1e-11);
  }
}

TEST_CASE("airy ode residual by finite differences") {
  const double h = 1e-3;
  double worst = 0.0;
  for (double x = -20.0; x <= 10.0; x += 0.01) {
    // Use the derivative values to keep the difference quotient well conditioned.
    const double d2 = (-airy_ai(x + 2 * h).ai_prime + 8 * airy_ai(x + h).ai_prime -
                       8 * airy_ai(x - h).ai_prime + airy_ai(x - 2 * h).ai_prime) /
                      (12 * h);
    worst = std::max(worst, std::fabs(d2 - x * airy_ai(x).ai));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("airy rejects non-finite input") {
  CHECK_THROWS_AS(airy_ai(NAN), Error);
  CHECK_THROWS_AS(airy_ai(INFINITY), Error);
}

TEST_CASE("elliptic degenerate and divergent moduli") {
  const auto z = elliptic_ke(0.0);
  CHECK(z.K == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
  CHECK(z.E == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
  const auto one = elliptic_ke(1.0);
  CHECK(one.K_divergent);
  CHECK(std::isinf(one.K));
  CHECK(one.E == 1.0);
  CHECK_THROWS_AS(elliptic_ke(-0.1), Error);
  CHECK_THROWS_AS(elliptic_ke(1.1), Error);
}

TEST_CASE("elliptic against doubled-precision agm and std oracles") {
  const double k = 1.0 / std::sqrt(2.0);
  CHECK(elliptic_ke(k).K == doctest::Approx(1.8540746773013719).epsilon(1e-14));
  for (double kk = 0.01; kk < 0.999; kk += 0.0371) {
    const auto p = elliptic_ke(kk);
    CHECK(std::fabs(p.K / static_cast<double>(agm_K(kk)) - 1.0) < 1e-12);
    CHECK(std::fabs(p.K / std::comp_ellint_1(kk) - 1.0) < 1e-12);
    CHECK(std::fabs(p.E / std::comp_ellint_2(kk) - 1.0) < 1e-12);
  }
}

TEST_CASE("complementary parametrization near kappa = 1") {
  for (double kp : {1e-3, 1e-6, 1e-9}) {
    const double k = std::sqrt(1.0 - kp * kp);
    const auto p = elliptic_ke_complement(kp);
    // K ~ log(4/k') + O(k'^2 log k')
    CHECK(p.K == doctest::Approx(std::log(4.0 / kp)).epsilon(1e-5));
    CHECK(p.kappa == doctest::Approx(k));
  }
}

TEST_CASE("elliptic monotonicity on a 100-point grid") {
  double prevK = 0.0, prevE = 10.0;
  for (int i = 0; i < 100; ++i) {
    const auto p = elliptic_ke(i / 100.0);
    CHECK(p.K > prevK);
    CHECK(p.E < prevE);
    CHECK(p.K >= std::numbers::pi / 2);
    CHECK(p.E <= std::numbers::pi / 2);
    prevK = p.K;
    prevE = p.E;
  }
}

TEST_CASE("jacobi cd special values") {
  for (double k : {0.0, 0.2, 0.7, 0.95}) CHECK(jacobi_cd(0.0, k) == doctest::Approx(1.0).epsilon(1e-14));
  for (double z : {0.3, 1.7, -4.0, 11.0}) CHECK(jacobi_cd(z, 0.0) == doctest::Approx(std::cos(z)));
  CHECK_THROWS_AS(jacobi_cd(0.1, 1.0), Error);
}

TEST_CASE("jacobi cd against boost") {
  for (double k : {0.1, 0.5, 0.9, 0.99}) {
    for (double z = -6.0; z <= 6.0; z += 0.173) {
      CHECK(jacobi_cd(z, k) == doctest::Approx(boost::math::jacobi_cd(k, z)).epsilon(1e-12));
    }
  }
}

TEST_CASE("jacobi cd small-modulus sandwich") {
  for (double k : {0.01, 0.05, 0.1}) {
    const double K = elliptic_ke(k).K;
    double worst = 0.0;
    for (double z = 0.0; z <= 3.0; z += 0.01)
      worst = std::max(worst, std::fabs(jacobi_cd(z, k) - std::cos(std::numbers::pi * z / (2 * K))));
    CHECK(worst <= 1.0 * k * k);
  }
}

TEST_CASE("jacobi cd periodicity") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uk(0.0, 0.95), uz(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double k = uk(rng), z = uz(rng);
    const double K = elliptic_ke(k).K;
    CHECK(std::fabs(jacobi_cd(z + 4 * K, k) - jacobi_cd(z, k)) < 1e-10);
  }
}

TEST_CASE("barnes g2 values") {
  CHECK(barnes_g_sym(0.0) == 0.0);
  // Frozen reference from an arbitrary-precision evaluation of log G.
  CHECK(barnes_g_sym(1.0) == doctest::Approx(0.039571221124245395).epsilon(1e-13));
  CHECK_THROWS_AS(barnes_g_sym(2 * std::numbers::pi), Error);
  CHECK_THROWS_AS(barnes_g_sym(-0.5), Error);
}

TEST_CASE("barnes g2 branches agree") {
  for (double v = 0.1; v < 6.0; v += 0.3) {
    const std::complex<double> z(0.0, v / (2 * std::numbers::pi));
    const double plus = 2.0 * log_barnes_g1p(z).real();
    const double minus = 2.0 * log_barnes_g1p(std::conj(z)).real();
    CHECK(std::fabs(plus - minus) < 1e-13);
    CHECK(std::fabs(barnes_g_sym(v) - plus) < 1e-13);
  }
}

TEST_CASE("barnes g2 matches independent even series") {
  // g2 = (1+gamma) y^2 + sum_{j>=2} (-1)^(j+1) zeta(2j-1) y^(2j) / j, summed to twice the terms.
  const double v = 1.0, y = v / (2 * std::numbers::pi);
  long double sum = (1.0L + std::numbers::egamma_v<long double>) * y * y;
  long double yp = y * y;
  for (int j = 2; j < 80; ++j) {
    yp *= y * y;
    sum += ((j % 2 == 0) ? -1.0L : 1.0L) * std::riemann_zetal(2.0L * j - 1) * yp / j;
  }
  CHECK(std::fabs(barnes_g_sym(v) - static_cast<double>(sum)) < 1e-14);
}

TEST_CASE("gauss legendre rules") {
  const auto r2 = gauss_legendre(2);
  CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  const auto r64 = gauss_legendre(64);
  double s = 0.0;
  for (double w : r64.weights) s += w;
  CHECK(std::fabs(s - 2.0) < 1e-13);
  const auto r4 = gauss_legendre(4);
  double i6 = 0.0;
  for (int i = 0; i < 4; ++i) i6 += r4.weights[i] * std::pow(r4.nodes[i], 6);
  CHECK(std::fabs(i6 - 2.0 / 7.0) < 1e-14);
  CHECK_THROWS_AS(gauss_legendre(1), Error);
  CHECK_THROWS_AS(gauss_legendre(513), Error);
}

TEST_CASE("gauss legendre exactness and ordering") {
  for (int m : {3, 7, 16, 33, 100, 512}) {
    const auto r = gauss_legendre(m);
    for (int i = 1; i < m; ++i) CHECK(r.nodes[i] > r.nodes[i - 1]);
    for (int deg = 0; deg <= 2 * m - 1 && deg <= 60; ++deg) {
      double s = 0.0;
      for (int i = 0; i < m; ++i) s += r.weights[i] * std::pow(r.nodes[i], deg);
      const double exact = (deg % 2 == 1) ? 0.0 : 2.0 / (deg + 1);
      CHECK(std::fabs(s - exact) < 1e-12);
    }
  }
}

TEST_CASE("transforms integrate known functions") {
  const auto base = gauss_legendre(80);
  auto lin = mapped(with_transform(base, Linear{0.0, 3.0}));
  double s = 0.0;
  for (std::size_t i = 0; i < lin.x.size(); ++i) s += lin.w[i] * std::exp(-lin.x[i]);
  CHECK(s == doctest::Approx(1.0 - std::exp(-3.0)).epsilon(1e-13));

  auto semi = mapped(with_transform(base, SemiInfiniteRational{1.0, 2.0}));
  s = 0.0;
  for (std::size_t i = 0; i < semi.x.size(); ++i) s += semi.w[i] / (semi.x[i] * semi.x[i]);
  CHECK(s == doctest::Approx(1.0).epsilon(1e-10));

  auto line = mapped(with_transform(base, RealLineTanh{0.5, 1.0}));
  s = 0.0;
  for (std::size_t i = 0; i < line.x.size(); ++i) s += line.w[i] / std::cosh(line.x[i] - 0.5) / std::cosh(line.x[i] - 0.5);
  CHECK(s == doctest::Approx(2.0).epsilon(1e-8));
}
