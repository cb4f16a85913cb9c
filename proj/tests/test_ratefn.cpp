#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "kpztail/error.hpp"
#include "kpztail/ratefn.hpp"
#include "kpztail/specfun.hpp"

using namespace kpztail;
using namespace kpztail::ratefn;

namespace {

const double kPi = std::numbers::pi;

// The printed closed form for phi_minus evaluated with 50 decimal digits.
double phi_minus_oracle(double zd) {
  using big = boost::multiprecision::cpp_bin_float_50;
  const big pi = boost::math::constants::pi<big>();
  const big z = zd;
  const big pi2 = pi * pi, pi4 = pi2 * pi2, pi6 = pi4 * pi2;
  const big v = 4 / (15 * pi6) * pow(1 - pi2 * z, big(2.5)) - 4 / (15 * pi6) + 2 / (3 * pi4) * z - z * z / (2 * pi2);
  return static_cast<double>(v);
}

double phi_tilde_oracle(double zd) {
  using big = boost::multiprecision::cpp_bin_float_50;
  const big pi = boost::math::constants::pi<big>();
  const big z = zd;
  const big pi2 = pi * pi, pi6 = pi2 * pi2 * pi2;
  const big Z = sqrt(4 - z * pi2);
  const big v = 2 / (15 * pi6) * (40 * pow(Z - 2, 3) + 2 * pow(8 - z * pi2 - 4 * Z, big(1.5)) * (-z * pi2 + 6 * (Z - 2)));
  return static_cast<double>(v);
}

}  // namespace

TEST_CASE("phi minus values") {
  CHECK(phi_minus(0.0) == 0.0);
  CHECK(phi_minus(-10.0) == doctest::Approx(22.40).epsilon(1e-3));
  for (double z : {-1e-6, -1e-3, -0.05, -0.3, -1.0, -10.0, -1e4})
    CHECK(phi_minus(z) == doctest::Approx(phi_minus_oracle(z)).epsilon(1e-13));
  CHECK_THROWS_AS(phi_minus(0.1), Error);
}

TEST_CASE("phi minus one-sided limits") {
  // Next Taylor term is -(pi^2/8)|z| relative, so the cubic limit is checked at small |z|.
  CHECK(phi_minus(-0.005) / (std::pow(0.005, 3) / 12) == doctest::Approx(1.0).epsilon(0.01));
  CHECK(phi_minus(-1e-5) / (std::pow(1e-5, 3) / 12) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(phi_minus(-1e4) / (4 / (15 * kPi) * std::pow(1e4, 2.5)) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("phi tilde values and limits") {
  CHECK(phi_tilde(-1e-8) <= 1e-6);
  for (double z : {-1e-3, -0.05, -0.3, -1.0, -10.0, -1e4})
    CHECK(phi_tilde(z) == doctest::Approx(phi_tilde_oracle(z)).epsilon(1e-12));
  for (double z : {-0.5, -1.0, -5.0, -10.0}) CHECK(phi_tilde(z) >= phi_minus(z));
  const double r = phi_tilde(-1e4) / (4 / (15 * kPi) * std::pow(1e4, 2.5));
  CHECK(r >= 0.98);
  CHECK(r <= 1.02);
  CHECK_THROWS_AS(phi_tilde(0.0), Error);
}

TEST_CASE("ratio profile on a log-spaced grid") {
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const double z = -std::pow(10.0, 1.0 - (1.0 + std::log10(20.0)) * i / 499.0);
    const auto p = rate_point(z);
    CHECK(p.phi_tilde >= p.phi_minus);
    CHECK(p.ratio >= 1.0);
    worst = std::max(worst, p.ratio);
  }
  CHECK(worst <= 1.151);
  CHECK(rate_point(0.0).ratio == 1.0);
  CHECK(rate_point(-0.01).ratio <= 1.02);
  CHECK(rate_point(-1e4).ratio <= 1.02);
}

TEST_CASE("rate functions strictly increase in -z") {
  double pm = 0.0, pt = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double z = -0.01 - (10.0 - 0.01) * i / 400.0;
    CHECK(phi_minus(z) > pm);
    CHECK(phi_tilde(z) > pt);
    pm = phi_minus(z);
    pt = phi_tilde(z);
  }
}

TEST_CASE("conditional density") {
  CHECK(conditional_density(0.5, -1.0) == 0.0);
  CHECK(conditional_density(-1.0, -1.0) == INFINITY);
  CHECK(conditional_density(0.0, 0.0) == 0.0);
  for (double a : {-0.1, -1.0, -7.5}) CHECK(conditional_density(a, 0.0) == doctest::Approx(std::sqrt(-a) / kPi).epsilon(1e-15));
  CHECK_THROWS_AS(conditional_density(-1.0, 0.5), Error);
  CHECK_THROWS_AS(conditional_density(NAN, -1.0), Error);
}

TEST_CASE("variational integral against quadrature") {
  const double z = -4.0, r = -1.0;
  // a = r - t^2 removes the inverse square root at a = r.
  const auto rule = specfun::mapped(specfun::with_transform(specfun::gauss_legendre(60), specfun::Linear{0.0, std::sqrt(r - z)}));
  double q = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const double t = rule.x[i], a = r - t * t;
    q += rule.w[i] * 2.0 * t * conditional_density(a, r) * (a - z);
  }
  CHECK(std::fabs(q - variational_integral(z, r)) <= 1e-8);
}

TEST_CASE("variational minimizer") {
  for (double z : {-1.0, -5.0, -10.0}) CHECK(std::fabs(variational_min(z).r_star - variational_argmin_closed(z)) <= 1e-6);
  CHECK(std::fabs(variational_min(-3.0).value - phi_tilde(-3.0)) <= 1e-8);
  for (double z : {-0.5, -2.0, -7.0})
    CHECK(std::fabs(variational_objective(z, 0.0) - 4 / (15 * kPi) * std::pow(-z, 2.5)) <= 1e-8);
  for (double z : {-0.2, -1.0, -4.0, -9.0})
    CHECK(std::fabs(variational_objective(z, variational_argmin_closed(z)) - phi_tilde(z)) <= 1e-12 * (1 + phi_tilde(z)));
  CHECK_THROWS_AS(variational_min(0.0), Error);
}
