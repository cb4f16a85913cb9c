#pragma once

#include <cstdint>
#include <vector>

namespace kpztail::airyprocess {

// beta may be +inf, which switches the noise off.
struct SaoMesh {
  double h = 0.02;
  int n = 1000;
  double beta = 2.0;
};

struct SpectrumSample {
  SaoMesh mesh;
  std::vector<double> eigenvalues;
  std::uint64_t seed = 0;
  int k = 0;
};

struct CountingStats {
  double s = 0.0;
  int n_samples = 0;
  double mean = 0.0;
  double variance = 0.0;
  double mean_ci_halfwidth = 0.0;
  double empty_fraction = 0.0;  // fraction of samples with no eigenvalue <= s
};

struct RigidityBounds {
  double count_deficit;  // exp(-c s^(3-delta) (1 - K s^(-4 delta/15)))
  double count_excess;   // exp(-c s^(3/2) (log(c s^(3/2)) - (1+eps) log log s))
  double sandwich_tail;  // kappa exp(-kappa s^(1-delta))
};

struct SandwichEstimate {
  double value = 0.0;
  int k_used = 0;
  bool truncated = true;  // sup taken over the sampled k only, so a lower bound
};

inline constexpr int kDefaultSpectrumSize = 6;

double airy_eigenvalue(int n);

// Seed of replicate r in a Monte Carlo run keyed by seed.
std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t r);

// Standard normal number i of the stream keyed by seed.
double counter_normal(std::uint64_t seed, std::uint64_t i);

SpectrumSample sample_sao_spectrum(const SaoMesh& mesh, int k, std::uint64_t seed);

// Number of eigenvalues <= s of the operator sampled with the given seed.
int sao_count_below(const SaoMesh& mesh, double s, std::uint64_t seed);

// workers = 0 picks the hardware concurrency. Results do not depend on it.
CountingStats counting_statistics(double s, int n_samples, const SaoMesh& mesh, std::uint64_t seed,
                                  int workers = 0);
std::vector<CountingStats> counting_statistics_grid(const std::vector<double>& s, int n_samples,
                                                    const SaoMesh& mesh, std::uint64_t seed, int workers = 0);

// Lowest eigenvalue over replicates 0..n_samples-1, the Tracy-Widom side of the sampler.
std::vector<double> sample_top_eigenvalues(int n_samples, const SaoMesh& mesh, std::uint64_t seed,
                                           int workers = 0);

RigidityBounds rigidity_bounds(double s, double c, double delta, double epsilon, double K = 1.0,
                               double kappa = 1.0);

SandwichEstimate sandwich_constant(const SpectrumSample& sample, double epsilon);

}  // namespace kpztail::airyprocess
