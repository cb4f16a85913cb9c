#pragma once

#include <optional>
#include <vector>

#include "kpztail/fredholm.hpp"

namespace kpztail::tailbounds {

struct TailCurve {
  double T = 1.0;
  std::vector<double> s_grid;
  std::vector<double> neg_log_q;
  std::vector<double> local_exponent;  // centered slopes, one per interior grid point
};

struct TheoremBounds {
  double upper = 0.0;
  double lower = 0.0;
};

// Cheap a-priori size of -log Q used to refuse points past the trust bound.
double neg_log_q_estimate(double s, double T);

// Centered differences of log L against log s; needs s, L > 0 and at least 3 points.
std::vector<double> local_exponents(const std::vector<double>& s, const std::vector<double>& L);

TailCurve crossover_curve(double T, const std::vector<double>& s_grid,
                          int order = fredholm::kDefaultOrder, int workers = 0);

// Intersection of the s^(5/2) and s^3 leading terms.
double crossover_scale(double T);

// s at which the local exponent first crosses `target` (log-linear interpolation).
std::optional<double> slope_crossing(const TailCurve& curve, double target);

double heuristic_sum(double s, double T, int k_max);

TheoremBounds theorem_bounds(double s, double T, double epsilon, double delta, double C,
                             double K1, double K2);

}  // namespace kpztail::tailbounds
