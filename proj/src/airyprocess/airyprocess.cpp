#include "kpztail/airyprocess.hpp"

#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <numbers>

#include "kpztail/error.hpp"
#include "kpztail/parallel.hpp"
#include "kpztail/specfun.hpp"

namespace kpztail::airyprocess {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double unit_open(std::uint64_t bits) { return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53; }

void check_mesh(const SaoMesh& m) {
  if (!(m.h > 0.0 && m.h <= 0.05)) raise(ErrorKind::Domain, "SAO mesh needs 0 < h <= 0.05", {{"h", m.h}});
  if (m.n < 10) raise(ErrorKind::Domain, "SAO mesh needs n >= 10", {{"n", m.n}});
  if (!(m.beta > 0.0)) raise(ErrorKind::Domain, "SAO mesh needs beta > 0", {{"beta", m.beta}});
}

struct Tridiagonal {
  std::vector<double> diag;
  double off2;  // squared off-diagonal, constant
};

Tridiagonal build(const SaoMesh& m, std::uint64_t seed) {
  Tridiagonal t;
  t.diag.resize(m.n);
  const double noise = std::isinf(m.beta) ? 0.0 : 2.0 / std::sqrt(m.beta) / std::sqrt(m.h);
  const double lap = 2.0 / (m.h * m.h);
  // Grid x_i = i h, i = 1..n, Dirichlet condition at x = 0.
  for (int i = 0; i < m.n; ++i) {
    t.diag[i] = lap + (i + 1) * m.h;
    if (noise != 0.0) t.diag[i] += noise * counter_normal(seed, static_cast<std::uint64_t>(i));
  }
  t.off2 = 1.0 / (m.h * m.h * m.h * m.h);
  return t;
}

// Number of eigenvalues strictly below lambda (Sturm sequence).
int sturm_count(const Tridiagonal& t, double lambda) {
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    q = t.diag[i] - lambda - (i == 0 ? 0.0 : t.off2 / q);
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

void bisect_all(const Tridiagonal& t, double lo, double hi, int clo, int chi, int k, std::vector<double>& out) {
  if (clo >= chi || clo >= k) return;
  const double mid = 0.5 * (lo + hi);
  if (hi - lo <= 1e-11 * std::max(1.0, std::fabs(mid))) {
    for (int j = clo; j < std::min(chi, k); ++j) out[j] = mid;
    return;
  }
  const int c = sturm_count(t, mid);
  bisect_all(t, lo, mid, clo, c, k, out);
  bisect_all(t, mid, hi, c, chi, k, out);
}

}  // namespace

double airy_eigenvalue(int n) {
  if (n < 1 || n > 1000000) raise(ErrorKind::Domain, "airy_eigenvalue needs 1 <= n <= 1e6", {{"n", n}});
  // Asymptotic zero estimate, then a bracket of half the local spacing.
  const double t = 3.0 * kPi * (4.0 * n - 1.0) / 8.0;
  const double it2 = 1.0 / (t * t);
  const double est = std::pow(t, 2.0 / 3.0) * (1.0 + it2 * (5.0 / 48.0 + it2 * (-5.0 / 36.0)));
  const double half = 0.5 * kPi / std::sqrt(est) * 0.5;
  auto f = [](double lam) { return specfun::airy_ai(-lam).ai; };
  double lo = est - half, hi = est + half;
  while (f(lo) * f(hi) > 0.0) {
    lo -= 0.5 * half;
    hi += 0.5 * half;
  }
  boost::uintmax_t iters = 200;
  auto tol = [](double a, double b) { return std::fabs(a - b) <= 1e-13 * std::max(1.0, std::fabs(a)); };
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
  return 0.5 * (r.first + r.second);
}

std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t r) {
  return splitmix(splitmix(seed) ^ (0xd1b54a32d192ed03ULL * (r + 1)));
}

double counter_normal(std::uint64_t seed, std::uint64_t i) {
  // Box-Muller on a pair of counter-based uniforms; the pair index is i/2.
  const std::uint64_t key = splitmix(seed ^ 0x5851f42d4c957f2dULL);
  const std::uint64_t pair = i >> 1;
  const double u1 = unit_open(splitmix(key + 2 * pair));
  const double u2 = unit_open(splitmix(key + 2 * pair + 1));
  const double r = std::sqrt(-2.0 * std::log(u1));
  return (i & 1) ? r * std::sin(2.0 * kPi * u2) : r * std::cos(2.0 * kPi * u2);
}

SpectrumSample sample_sao_spectrum(const SaoMesh& mesh, int k, std::uint64_t seed) {
  check_mesh(mesh);
  if (k < 1 || k > 200) raise(ErrorKind::Domain, "sample_sao_spectrum needs 1 <= k <= 200", {{"k", k}});
  const double lam_k = airy_eigenvalue(k);
  if (lam_k >= mesh.n * mesh.h / 2.0)
    raise(ErrorKind::Truncation, "SAO domain too short for the requested number of eigenvalues",
          {{"k", k}, {"lambda_k", lam_k}, {"domain_length", mesh.n * mesh.h}});
  const auto t = build(mesh, seed);
  double lo = 1e300, hi = -1e300;
  const double r = 2.0 / (mesh.h * mesh.h);
  for (double d : t.diag) {
    lo = std::min(lo, d - r);
    hi = std::max(hi, d + r);
  }
  // Shrink the upper end to just above the k-th eigenvalue before the shared bisection.
  double top = std::max(lo + 1.0, 2.0 * lam_k + 10.0);
  while (top < hi && sturm_count(t, top) < k) top = std::min(hi, 2.0 * top - lo);
  top = std::min(top, hi);
  SpectrumSample out;
  out.mesh = mesh;
  out.seed = seed;
  out.k = k;
  out.eigenvalues.assign(k, 0.0);
  bisect_all(t, lo, top, 0, sturm_count(t, top), k, out.eigenvalues);
  return out;
}

int sao_count_below(const SaoMesh& mesh, double s, std::uint64_t seed) {
  check_mesh(mesh);
  return sturm_count(build(mesh, seed), std::nextafter(s, INFINITY));
}

std::vector<CountingStats> counting_statistics_grid(const std::vector<double>& s, int n_samples,
                                                    const SaoMesh& mesh, std::uint64_t seed, int workers) {
  check_mesh(mesh);
  if (n_samples < 100)
    raise(ErrorKind::Domain, "counting statistics need at least 100 samples", {{"n_samples", n_samples}});
  for (double x : s) {
    if (!(x >= 0.5 && x <= 8.0)) raise(ErrorKind::Domain, "counting statistics need s in [0.5, 8]", {{"s", x}});
    if (x >= mesh.n * mesh.h / 2.0)
      raise(ErrorKind::Truncation, "SAO domain too short for the counting window",
            {{"s", x}, {"domain_length", mesh.n * mesh.h}});
  }
  const std::size_t m = s.size();
  std::vector<int> counts(static_cast<std::size_t>(n_samples) * m);
  parallel_for(n_samples, workers, [&](std::size_t r) {
    const auto t = build(mesh, replicate_seed(seed, r));
    for (std::size_t j = 0; j < m; ++j) counts[r * m + j] = sturm_count(t, std::nextafter(s[j], INFINITY));
  });
  std::vector<CountingStats> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    // Integer sums keep the aggregation exact and order independent.
    long long sum = 0, sum2 = 0, empty = 0;
    for (int r = 0; r < n_samples; ++r) {
      const long long c = counts[static_cast<std::size_t>(r) * m + j];
      sum += c;
      sum2 += c * c;
      empty += (c == 0);
    }
    const double n = n_samples;
    CountingStats& st = out[j];
    st.s = s[j];
    st.n_samples = n_samples;
    st.mean = sum / n;
    st.variance = std::max(0.0, (sum2 - sum * st.mean) / (n - 1.0));
    st.mean_ci_halfwidth = 1.959963984540054 * std::sqrt(st.variance / n);
    st.empty_fraction = empty / n;
  }
  return out;
}

CountingStats counting_statistics(double s, int n_samples, const SaoMesh& mesh, std::uint64_t seed, int workers) {
  if (n_samples <= 0) raise(ErrorKind::Domain, "n_samples must be positive", {{"n_samples", n_samples}});
  return counting_statistics_grid({s}, n_samples, mesh, seed, workers).front();
}

std::vector<double> sample_top_eigenvalues(int n_samples, const SaoMesh& mesh, std::uint64_t seed, int workers) {
  if (n_samples <= 0) raise(ErrorKind::Domain, "n_samples must be positive", {{"n_samples", n_samples}});
  std::vector<double> out(n_samples);
  parallel_for(n_samples, workers, [&](std::size_t r) {
    out[r] = sample_sao_spectrum(mesh, 1, replicate_seed(seed, r)).eigenvalues[0];
  });
  return out;
}

RigidityBounds rigidity_bounds(double s, double c, double delta, double epsilon, double K, double kappa) {
  if (!(s > 0.0)) raise(ErrorKind::Domain, "rigidity bounds need s > 0", {{"s", s}});
  if (!(c > 0.0)) raise(ErrorKind::Domain, "rigidity bounds need c > 0", {{"c", c}});
  if (!(delta > 0.0 && delta < 1.0)) raise(ErrorKind::Domain, "rigidity bounds need delta in (0,1)", {{"delta", delta}});
  if (!(epsilon > 0.0 && epsilon < 1.0))
    raise(ErrorKind::Domain, "rigidity bounds need epsilon in (0,1)", {{"epsilon", epsilon}});
  if (!(s > 1.0)) raise(ErrorKind::Domain, "log log s undefined for s <= 1", {{"s", s}});
  RigidityBounds b;
  b.count_deficit = std::exp(-c * std::pow(s, 3.0 - delta) * (1.0 - K * std::pow(s, -4.0 * delta / 15.0)));
  const double cs = c * std::pow(s, 1.5);
  b.count_excess = std::exp(-cs * (std::log(cs) - (1.0 + epsilon) * std::log(std::log(s))));
  b.sandwich_tail = kappa * std::exp(-kappa * std::pow(s, 1.0 - delta));
  return b;
}

SandwichEstimate sandwich_constant(const SpectrumSample& sample, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 1.0))
    raise(ErrorKind::Domain, "sandwich_constant needs epsilon in [0,1)", {{"epsilon", epsilon}});
  if (sample.eigenvalues.empty()) raise(ErrorKind::Domain, "sandwich_constant needs a nonempty sample");
  SandwichEstimate est;
  est.k_used = static_cast<int>(sample.eigenvalues.size());
  for (int k = 1; k <= est.k_used; ++k) {
    const double lam = airy_eigenvalue(k), L = sample.eigenvalues[k - 1];
    est.value = std::max({est.value, (1.0 - epsilon) * lam - L, L - (1.0 + epsilon) * lam});
  }
  return est;
}

}  // namespace kpztail::airyprocess
