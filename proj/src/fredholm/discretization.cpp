#include <algorithm>
#include <cmath>
#include <map>

#include "kpztail/error.hpp"
#include "kpztail/fredholm.hpp"
#include "kpztail/specfun.hpp"

namespace kpztail::fredholm {

namespace {

// Beyond this distance right of max(a, 0) the Airy kernel is below e^-80.
constexpr double kRightCutoff = 16.0;
constexpr int kMaxNodes = 2400;

// Panel width cap so that every panel holds a bounded number of Airy oscillations.
double oscillation_cap(double x) { return std::min(2.0, 5.0 / std::sqrt(std::max(-x, 1.0))); }

std::vector<double> graded_edges(double c, double beta, double hi) {
  constexpr double kFirstWidth = 1.5;
  constexpr double kGrowth = 4.0;
  constexpr double kLeftDecay = 30.0;  // sigma < e^-30 left of lo
  const double lo = c - kLeftDecay / beta;
  std::vector<double> edges{c};
  double w = kFirstWidth / beta, x = c;
  while (x > lo) {
    x = std::max(x - std::min(w, oscillation_cap(x)), lo);
    edges.push_back(x);
    w *= kGrowth;
  }
  w = kFirstWidth / beta;
  x = c;
  while (x < hi) {
    x = std::min(x + std::min(w, oscillation_cap(x)), hi);
    edges.push_back(x);
    w *= kGrowth;
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

const specfun::QuadratureRule& cached_rule(int m) {
  thread_local std::map<int, specfun::QuadratureRule> cache;
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, specfun::gauss_legendre(m)).first;
  return it->second;
}

void append_panel(Discretization& d, double a, double b, int m) {
  const auto mr = specfun::mapped(specfun::with_transform(cached_rule(m), specfun::Linear{a, b}));
  d.x.insert(d.x.end(), mr.x.begin(), mr.x.end());
  d.w.insert(d.w.end(), mr.w.begin(), mr.w.end());
}

}  // namespace

Discretization discretize(const KernelSpec& kernel, int order, bool local_refine) {
  Discretization d;
  if (const auto* f = std::get_if<FermiAiry>(&kernel.variant)) {
    const double beta = std::cbrt(f->T);
    const double c = -kernel.left_endpoint;
    const auto edges = graded_edges(c, beta, std::max(c, 0.0) + kRightCutoff);
    const int m = std::max(6, static_cast<int>(std::lround(order / 12.0)));
    const double layer = 6.0 / beta;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      const double a = edges[i], b = edges[i + 1];
      if (local_refine && std::fabs(0.5 * (a + b) - c) < layer) {
        append_panel(d, a, 0.5 * (a + b), m);
        append_panel(d, 0.5 * (a + b), b, m);
      } else {
        append_panel(d, a, b, m);
      }
    }
    if (static_cast<int>(d.x.size()) > kMaxNodes)
      raise(ErrorKind::Resolution, "Fermi weight needs more nodes than the dense solver allows",
            {{"T", f->T}, {"s", kernel.left_endpoint}, {"nodes", static_cast<double>(d.x.size())}});
    return d;
  }
  const double a = kernel.left_endpoint;
  append_panel(d, a, std::max(a, 0.0) + kRightCutoff, order);
  return d;
}

int airy_order_for(double a, int requested) {
  const double t = std::max(-a, 0.0);
  const double phase = 2.0 / 3.0 * t * std::sqrt(t);
  const int need = static_cast<int>(std::ceil(60.0 + phase));
  return std::clamp(std::max(requested, need), 8, 400);
}

}  // namespace kpztail::fredholm
