#include <cmath>
#include <random>

#include "doctest.h"
#include "kpztail/error.hpp"
#include "kpztail/fredholm.hpp"
#include "kpztail/specfun.hpp"

using namespace kpztail;
using namespace kpztail::fredholm;

TEST_CASE("zero thinning gives zero log-determinant") {
  const auto r = log_fredholm_det(KernelSpec::thinned(0.0, -3.0), 40);
  CHECK(r.log_det == 0.0);
  CHECK(thinned_log_cdf(-7.0, 0.0) == 0.0);
}

TEST_CASE("rank-one kernel reproduces log(1 - lambda)") {
  const auto rule = specfun::mapped(
      specfun::with_transform(specfun::gauss_legendre(60), specfun::SemiInfiniteRational{0.0, 1.0}));
  for (double lambda : {0.1, 0.5, 0.9, 0.999}) {
    const double c = std::sqrt(2.0 * lambda);  // phi = c e^{-x}, int phi^2 = lambda
    const std::size_t n = rule.x.size();
    Eigen::MatrixXd m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m(i, j) = std::sqrt(rule.w[i] * rule.w[j]) * c * c * std::exp(-rule.x[i] - rule.x[j]);
    CHECK(std::fabs(log_det_symmetric(m).log_det - std::log1p(-lambda)) < 1e-10);
  }
}

TEST_CASE("eigenvalue above one is reported as ill-conditioned") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
  m(1, 1) = 1.5;
  CHECK_THROWS_AS(log_det_symmetric(m), Error);
  try {
    log_det_symmetric(m);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IllConditioned);
  }
}

TEST_CASE("order range is enforced") {
  CHECK_THROWS_AS(log_fredholm_det(KernelSpec::airy(0.0), 7), Error);
  CHECK_THROWS_AS(log_fredholm_det(KernelSpec::airy(0.0), 401), Error);
  CHECK_THROWS_AS(log_fredholm_det(KernelSpec::thinned(1.2, 0.0), 40), Error);
  CHECK_THROWS_AS(log_fredholm_det(KernelSpec::fermi(-1.0, 0.0), 40), Error);
}

TEST_CASE("airy kernel far right matches the trace oracle") {
  const double s = 10.0;
  const auto a = specfun::airy_ai(s);
  // int_s^inf K(x,x) dx in closed form
  const double trace = (2 * s * s * a.ai * a.ai - 2 * s * a.ai_prime * a.ai_prime - a.ai * a.ai_prime) / 3.0;
  const auto r = log_fredholm_det(KernelSpec::airy(s), 80);
  CHECK(r.log_det < 0.0);
  CHECK(r.log_det > -1e-9);
  CHECK(std::fabs(-r.log_det / trace - 1.0) < 1e-8);
}

TEST_CASE("airy kernel trace at moderate endpoint") {
  for (double s : {-2.0, 0.0, 3.0}) {
    const auto a = specfun::airy_ai(s);
    const double trace = (2 * s * s * a.ai * a.ai - 2 * s * a.ai_prime * a.ai_prime - a.ai * a.ai_prime) / 3.0;
    const auto d = discretize(KernelSpec::airy(s), 80);
    double q = 0.0;
    for (std::size_t i = 0; i < d.x.size(); ++i) q += d.w[i] * airy_kernel(d.x[i], d.x[i]);
    CHECK(std::fabs(q - trace) < 1e-12);
  }
}

TEST_CASE("tracy widom reference values") {
  // Reference value of F_2(0) from the literature (Bornemann 2010).
  CHECK(tracy_widom_cdf(0.0) == doctest::Approx(0.96937282835526).epsilon(1e-12));
  const double f10 = tracy_widom_cdf(10.0);
  CHECK(f10 >= 1.0 - 1e-12);
  CHECK(f10 <= 1.0);
  const double ratio = log_tracy_widom_cdf(-8.0) / (-512.0 / 12.0);
  CHECK(ratio >= 1.00);
  CHECK(ratio <= 1.02);
  CHECK_THROWS_AS(tracy_widom_cdf(-12.5), Error);
  CHECK_THROWS_AS(tracy_widom_cdf(10.5), Error);
}

TEST_CASE("tracy widom order refinement") {
  for (double s : {-8.0, -6.0, -3.0, 0.0, 2.0, 5.0}) {
    const auto r = log_fredholm_det(KernelSpec::airy(s), airy_order_for(s));
    CHECK(r.error_estimate <= std::max(1e-12, 1e-8 * std::fabs(r.log_det)));
  }
}

TEST_CASE("tracy widom is nondecreasing") {
  double prev = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double s = -8.0 + 16.0 * i / 199.0;
    const double f = tracy_widom_cdf(s);
    CHECK(f >= prev);
    prev = f;
  }
}

TEST_CASE("discretized eigenvalues lie in [0,1]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ua(-8.0, 4.0), ug(0.0, 1.0), ut(0.0, 6.0);
  for (int trial = 0; trial < 12; ++trial) {
    const double a = ua(rng);
    const KernelSpec specs[] = {KernelSpec::airy(a), KernelSpec::thinned(ug(rng), a),
                                KernelSpec::fermi(std::pow(10.0, ut(rng)), -a)};
    for (const auto& k : specs) {
      const auto r = log_fredholm_det(k, 80);
      for (double lam : r.eigenvalues) {
        CHECK(lam >= -1e-8);
        CHECK(lam <= 1.0 + 1e-8);
      }
      CHECK(r.log_det <= 0.0);
    }
  }
}

TEST_CASE("order refinement stability for all kernels") {
  const KernelSpec specs[] = {KernelSpec::airy(-5.0), KernelSpec::thinned(0.7, -10.0),
                              KernelSpec::thinned(0.3, -30.0), KernelSpec::fermi(1e3, 3.0),
                              KernelSpec::fermi(1e6, 5.0), KernelSpec::fermi(10.0, 2.0)};
  for (const auto& k : specs) {
    const int order = std::holds_alternative<FermiAiry>(k.variant) ? 80 : airy_order_for(k.left_endpoint);
    const auto r = log_fredholm_det(k, order);
    CHECK(r.error_estimate <= std::max(1e-8, 1e-6 * std::fabs(r.log_det)));
  }
}

TEST_CASE("thinned cdf monotonicity") {
  for (double v : {0.1, 1.0, 5.0}) {
    double prev = -1e300;
    for (double x = -15.0; x <= 4.0; x += 0.5) {
      const double f = thinned_log_cdf(x, v);
      CHECK(f >= prev);
      CHECK(f <= 0.0);
      prev = f;
    }
  }
  for (double x : {-12.0, -3.0, 1.0}) {
    double prev = 1.0;
    for (double v : {0.0, 0.05, 0.3, 1.0, 3.0, 10.0}) {
      const double f = thinned_log_cdf(x, v);
      CHECK(f <= prev);
      prev = f;
    }
  }
  CHECK_THROWS_AS(thinned_log_cdf(-61.0, 1.0), Error);
  CHECK_THROWS_AS(thinned_log_cdf(0.0, -1.0), Error);
}

TEST_CASE("thinning interpolates to tracy widom") {
  for (double x : {-6.0, -2.0, 1.0}) CHECK(std::fabs(thinned_log_cdf(x, 40.0) - log_tracy_widom_cdf(x)) < 1e-6);
}

TEST_CASE("kpz laplace transform limits") {
  const double far = kpz_log_laplace(-30.0, 1.0, 80);
  CHECK(far <= 0.0);
  CHECK(far > -1e-6);
  const double lq = kpz_log_laplace(6.0, 1e6, kAcceptanceOrder);
  const double lf = log_tracy_widom_cdf(-6.0);
  CHECK(std::fabs(lq - lf) / std::fabs(lf) <= 0.05);
}

TEST_CASE("kpz laplace transform is nonincreasing in s") {
  for (double T : {1.0, 1e3}) {
    double prev = 1.0;
    for (double s = -4.0; s <= 4.0; s += 0.5) {
      const double q = kpz_log_laplace(s, T, 80);
      CHECK(q <= prev);
      prev = q;
    }
  }
}

TEST_CASE("kpz laplace transform errors") {
  CHECK_THROWS_AS(kpz_log_laplace(1.0, 1e-3, 80), Error);
  CHECK_THROWS_AS(kpz_log_laplace(1.0, 1e9, 80), Error);
  try {
    kpz_log_laplace(30.0, 1e6, 80);
    FAIL("trust bound not enforced");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Domain);
  }
  try {
    kpz_log_laplace(1.0, 0.01, 120);
    FAIL("unresolvable Fermi weight accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Resolution);
  }
}

TEST_CASE("deep Fermi points escalate the order instead of returning unconverged values") {
  const double a = kpz_log_laplace(10.5, 1e3);
  const double b = kpz_log_laplace(10.5, 1e3, kAcceptanceOrder);
  CHECK(std::fabs(a - b) <= 1e-4 * std::fabs(b));
  try {
    kpz_log_laplace(13.0, 1e3);
    FAIL("expected a resolution error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Resolution);
  }
}
