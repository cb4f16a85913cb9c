#include <algorithm>
#include <cmath>
#include <numbers>

#include "kpztail/error.hpp"
#include "kpztail/fredholm.hpp"
#include "kpztail/specfun.hpp"

namespace kpztail::fredholm {

namespace {

constexpr double kDiagonalGap = 1e-6;

void validate(const KernelSpec& kernel) {
  if (!std::isfinite(kernel.left_endpoint))
    raise(ErrorKind::Domain, "kernel endpoint must be finite", {{"left_endpoint", kernel.left_endpoint}});
  if (const auto* t = std::get_if<ThinnedAiry>(&kernel.variant)) {
    if (!(t->gamma >= 0.0 && t->gamma <= 1.0))
      raise(ErrorKind::Domain, "thinning gamma outside [0,1]", {{"gamma", t->gamma}});
  }
  if (const auto* f = std::get_if<FermiAiry>(&kernel.variant)) {
    if (!(f->T > 0.0 && std::isfinite(f->T)))
      raise(ErrorKind::Domain, "Fermi kernel needs T > 0", {{"T", f->T}});
  }
}

double kernel_from_values(double x, double y, const specfun::AiryValue& ax, const specfun::AiryValue& ay) {
  if (x == y) return ax.ai_prime * ax.ai_prime - x * ax.ai * ax.ai;
  if (std::fabs(x - y) < kDiagonalGap)
    return ax.ai_prime * ay.ai_prime - 0.5 * (x + y) * ax.ai * ay.ai;
  return (ax.ai * ay.ai_prime - ay.ai * ax.ai_prime) / (x - y);
}

LogDeterminantResult solve(const KernelSpec& kernel, int order, bool local_refine = false) {
  const auto d = discretize(kernel, order, local_refine);
  auto r = log_det_symmetric(nystrom_matrix(kernel, d));
  r.order_used = static_cast<int>(d.x.size());
  return r;
}

}  // namespace

double airy_kernel(double x, double y) {
  return kernel_from_values(x, y, specfun::airy_ai(x), specfun::airy_ai(y));
}

Eigen::MatrixXd nystrom_matrix(const KernelSpec& kernel, const Discretization& d) {
  const std::size_t n = d.x.size();
  std::vector<specfun::AiryValue> av(n);
  std::vector<double> root(n);
  double gamma = 1.0;
  if (const auto* t = std::get_if<ThinnedAiry>(&kernel.variant)) gamma = t->gamma;
  const auto* f = std::get_if<FermiAiry>(&kernel.variant);
  const double beta = f ? std::cbrt(f->T) : 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    av[i] = specfun::airy_ai(d.x[i]);
    double weight = d.w[i];
    if (f) weight /= 1.0 + std::exp(-beta * (kernel.left_endpoint + d.x[i]));
    root[i] = std::sqrt(weight);
  }
  Eigen::MatrixXd m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j; i < n; ++i) {
      const double v = gamma * root[i] * root[j] * kernel_from_values(d.x[i], d.x[j], av[i], av[j]);
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

LogDeterminantResult log_det_symmetric(const Eigen::MatrixXd& m) {
  LogDeterminantResult r;
  r.order_used = static_cast<int>(m.rows());
  if (m.rows() == 0) return r;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    raise(ErrorKind::Numeric, "symmetric eigensolver did not converge", {{"size", static_cast<double>(m.rows())}});
  const auto& ev = es.eigenvalues();
  r.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  r.max_eigenvalue = ev.maxCoeff();
  if (r.max_eigenvalue > 1.0 + 1e-8)
    raise(ErrorKind::IllConditioned, "discretized kernel has an eigenvalue above 1",
          {{"max_eigenvalue", r.max_eigenvalue}, {"size", static_cast<double>(m.rows())}});
  // Smallest magnitudes first keeps the sum well ordered.
  std::vector<double> terms;
  terms.reserve(r.eigenvalues.size());
  for (double lam : r.eigenvalues) terms.push_back(std::log1p(-std::clamp(lam, 0.0, 1.0 - 1e-16)));
  std::sort(terms.begin(), terms.end(), [](double a, double b) { return std::fabs(a) < std::fabs(b); });
  for (double t : terms) r.log_det += t;
  return r;
}

LogDeterminantResult log_fredholm_det(const KernelSpec& kernel, int order) {
  if (order < 8 || order > 400)
    raise(ErrorKind::Domain, "quadrature order outside [8, 400]", {{"order", order}});
  validate(kernel);
  auto r = solve(kernel, order);
  // Single Airy panels cannot exceed the 512-node Legendre table.
  const bool fermi = std::holds_alternative<FermiAiry>(kernel.variant);
  const int finer = fermi ? (3 * order) / 2 : std::min(512, (3 * order) / 2);
  r.error_estimate = std::fabs(solve(kernel, finer).log_det - r.log_det);
  return r;
}

double log_tracy_widom_cdf(double s, int order) {
  if (!(s >= -12.0 && s <= 10.0)) raise(ErrorKind::Domain, "tracy_widom_cdf needs s in [-12, 10]", {{"s", s}});
  return log_fredholm_det(KernelSpec::airy(s), airy_order_for(s, order > 0 ? order : kDefaultOrder)).log_det;
}

double tracy_widom_cdf(double s, int order) { return std::exp(log_tracy_widom_cdf(s, order)); }

double thinned_log_cdf(double x, double v, int order) {
  if (!(x >= -60.0 && x <= 10.0)) raise(ErrorKind::Domain, "thinned_log_cdf needs x in [-60, 10]", {{"x", x}});
  if (!(v >= 0.0)) raise(ErrorKind::Domain, "thinned_log_cdf needs v >= 0", {{"v", v}});
  if (v == 0.0) return 0.0;
  const double gamma = -std::expm1(-v);
  return log_fredholm_det(KernelSpec::thinned(gamma, x), airy_order_for(x, order > 0 ? order : kDefaultOrder)).log_det;
}

double kpz_log_laplace(double s, double T, int order) {
  if (!(T >= 1e-2 && T <= 1e8)) raise(ErrorKind::Domain, "kpz_log_laplace needs T in [1e-2, 1e8]", {{"T", T}});
  if (!std::isfinite(s)) raise(ErrorKind::Domain, "kpz_log_laplace needs finite s", {{"s", s}});
  if (s > 0.0) {
    const double estimate = std::min(s * s * s / 12.0, 4.0 / (15.0 * std::numbers::pi) * std::cbrt(T) * std::pow(s, 2.5));
    if (estimate > kTrustBound)
      raise(ErrorKind::Domain, "-log Q beyond the double-precision trust bound",
            {{"s", s}, {"T", T}, {"estimated_neg_log_q", estimate}, {"bound", kTrustBound}});
  }
  const auto kernel = KernelSpec::fermi(T, s);
  // Deep points need more nodes per panel than the default; raise the order until the
  // local and global refinements agree, or report the last disagreement.
  for (int o = order;; o = std::min(400, (3 * o) / 2)) {
    const auto r = log_fredholm_det(kernel, o);
    if (-r.log_det > kTrustBound)
      raise(ErrorKind::Domain, "-log Q beyond the double-precision trust bound",
            {{"s", s}, {"T", T}, {"neg_log_q", -r.log_det}, {"bound", kTrustBound}});
    const double refined = solve(kernel, o, true).log_det;
    const double tol = std::max(1e-7, 1e-5 * std::fabs(r.log_det));
    const bool local_ok = std::fabs(refined - r.log_det) <= tol;
    const bool global_ok = r.error_estimate <= tol;
    if (local_ok && global_ok) return r.log_det;
    bool can_grow = o < 400;
    if (can_grow) {
      try {
        discretize(kernel, std::min(400, (3 * o) / 2));
      } catch (const Error&) {
        can_grow = false;
      }
    }
    if (can_grow) continue;
    if (!local_ok)
      raise(ErrorKind::Resolution, "Fermi transition under-resolved by the node spacing",
            {{"s", s}, {"T", T}, {"log_q", r.log_det}, {"log_q_refined", refined}, {"order", o}});
    raise(ErrorKind::Resolution, "Fermi determinant not converged under 1.5x refinement",
          {{"s", s}, {"T", T}, {"log_q", r.log_det}, {"error_estimate", r.error_estimate}, {"order", o}});
  }
}

}  // namespace kpztail::fredholm
