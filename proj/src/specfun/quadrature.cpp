#include <cmath>
#include <numbers>

#include "kpztail/error.hpp"
#include "kpztail/specfun.hpp"

namespace kpztail::specfun {

QuadratureRule gauss_legendre(int order) {
  if (order < 2 || order > 512)
    raise(ErrorKind::Domain, "gauss_legendre: order outside [2, 512]", {{"order", order}});
  QuadratureRule rule;
  rule.order = order;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int n = order;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess for the i-th largest root, then Newton.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

QuadratureRule with_transform(QuadratureRule rule, Transform transform) {
  rule.transform = transform;
  return rule;
}

MappedRule mapped(const QuadratureRule& rule) {
  MappedRule out;
  out.x.resize(rule.nodes.size());
  out.w.resize(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = rule.nodes[i];
    const double w = rule.weights[i];
    std::visit(
        [&](const auto& tr) {
          using T = std::decay_t<decltype(tr)>;
          if constexpr (std::is_same_v<T, Linear>) {
            const double half = 0.5 * (tr.b - tr.a);
            out.x[i] = tr.a + half * (t + 1.0);
            out.w[i] = half * w;
          } else if constexpr (std::is_same_v<T, SemiInfiniteRational>) {
            const double d = 1.0 - t;
            out.x[i] = tr.origin + tr.scale * (1.0 + t) / d;
            out.w[i] = 2.0 * tr.scale / (d * d) * w;
          } else {
            out.x[i] = tr.center + tr.scale * std::atanh(t);
            out.w[i] = tr.scale / ((1.0 - t) * (1.0 + t)) * w;
          }
        },
        rule.transform);
  }
  return out;
}

}  // namespace kpztail::specfun
