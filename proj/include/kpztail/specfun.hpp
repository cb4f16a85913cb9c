#pragma once

#include <complex>
#include <variant>
#include <vector>

namespace kpztail::specfun {

struct AiryValue {
  double ai;
  double ai_prime;
};

// Ai and Ai' for finite x. Absolute error below 1e-12 on [-60, 20].
AiryValue airy_ai(double x);

namespace detail {
inline constexpr double kAirySeam = 9.0;
AiryValue airy_series(double x);
AiryValue airy_asymptotic(double x);
}  // namespace detail

struct EllipticPair {
  double kappa;
  double K;
  double E;
  bool K_divergent;
};

EllipticPair elliptic_ke(double kappa);

// Same integrals, parametrized by the complementary modulus kappa' = sqrt(1-kappa^2).
// Keeps full relative accuracy of K as kappa -> 1.
EllipticPair elliptic_ke_complement(double kappa_prime);

double jacobi_cd(double z, double kappa);

// g2(v) = log[G(1+iv/2pi) G(1-iv/2pi)], 0 <= v < 2pi.
double barnes_g_sym(double v);

// log G(1+z) by its Taylor series, |z| < 1.
std::complex<double> log_barnes_g1p(std::complex<double> z);

struct Linear {
  double a;
  double b;
};
struct SemiInfiniteRational {
  double origin;
  double scale;
};
struct RealLineTanh {
  double center;
  double scale;
};
using Transform = std::variant<Linear, SemiInfiniteRational, RealLineTanh>;

struct QuadratureRule {
  int order = 0;
  std::vector<double> nodes;    // canonical, increasing in (-1, 1)
  std::vector<double> weights;  // canonical, sum to 2
  Transform transform = Linear{-1.0, 1.0};
};

struct MappedRule {
  std::vector<double> x;
  std::vector<double> w;
};

QuadratureRule gauss_legendre(int order);
QuadratureRule with_transform(QuadratureRule rule, Transform transform);

// Nodes and weights after the change of variables.
MappedRule mapped(const QuadratureRule& rule);

}  // namespace kpztail::specfun
