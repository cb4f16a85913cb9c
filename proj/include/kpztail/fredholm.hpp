#pragma once

#include <Eigen/Dense>
#include <variant>
#include <vector>

namespace kpztail::fredholm {

struct Airy {};
struct ThinnedAiry {
  double gamma;
};
struct FermiAiry {
  double T;
};

// For the Airy variants the operator acts on L^2([left_endpoint, inf)). For FermiAiry it acts on
// the whole line with weight sigma(left_endpoint + a), sigma(r) = 1/(1+exp(-T^(1/3) r)), so
// left_endpoint carries the shift s of Q(s;T).
struct KernelSpec {
  std::variant<Airy, ThinnedAiry, FermiAiry> variant;
  double left_endpoint = 0.0;

  static KernelSpec airy(double a) { return {Airy{}, a}; }
  static KernelSpec thinned(double gamma, double a) { return {ThinnedAiry{gamma}, a}; }
  static KernelSpec fermi(double T, double s) { return {FermiAiry{T}, s}; }
};

struct LogDeterminantResult {
  double log_det = 0.0;
  std::vector<double> eigenvalues;
  double max_eigenvalue = 0.0;
  int order_used = 0;
  double error_estimate = 0.0;
};

inline constexpr int kDefaultOrder = 80;
inline constexpr int kAcceptanceOrder = 120;
inline constexpr double kTrustBound = 250.0;

// K^Ai(x, y) with the diagonal limit Ai'(x)^2 - x Ai(x)^2.
double airy_kernel(double x, double y);

// Nodes and weights used for a given kernel and order. For FermiAiry the rule is a composite of
// Gauss-Legendre panels graded around the transition point -s, with max(6, order/12) nodes per
// panel; local_refine splits the panels inside the transition layer.
struct Discretization {
  std::vector<double> x;
  std::vector<double> w;
};
Discretization discretize(const KernelSpec& kernel, int order, bool local_refine = false);

// Log-determinant of I - M for a symmetric matrix M, through its eigenvalues.
LogDeterminantResult log_det_symmetric(const Eigen::MatrixXd& m);

// Symmetrized Nystrom matrix sqrt(w_i) K(x_i, x_j) sqrt(w_j), weights and thinning included.
Eigen::MatrixXd nystrom_matrix(const KernelSpec& kernel, const Discretization& d);

LogDeterminantResult log_fredholm_det(const KernelSpec& kernel, int order = kDefaultOrder);

// Order needed for an Airy-type kernel on [a, inf); grows with the oscillation phase left of 0.
int airy_order_for(double a, int requested = kDefaultOrder);

double log_tracy_widom_cdf(double s, int order = 0);
double tracy_widom_cdf(double s, int order = 0);
double thinned_log_cdf(double x, double v, int order = 0);
double kpz_log_laplace(double s, double T, int order = kDefaultOrder);

}  // namespace kpztail::fredholm
