// Single-site Metropolis sampler for the eigenvalue density P^(n).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rmt/equilibrium.hpp"
#include "rmt/potential.hpp"

namespace rmt {

struct McmcConfig {
  int n_particles = 50;
  int sweeps = 4000;
  int burn_in = 1000;
  double proposal_scale = 0.0;  // 0 selects (support width) / sqrt(n)
  std::uint64_t seed = 1;
  int bins = 41;                // odd, so one bin is centred on 0
};

struct ChainSummary {
  std::vector<double> bin_edges;  // bins + 1 edges
  std::vector<long long> counts;
  long long samples = 0;
  double acceptance_rate = 0.0;
  double ks_distance = 0.0;       // against the equilibrium distribution function
  double zero_bin_mass = 0.0;     // fraction of samples in the bin holding 0
  double proposal_scale = 0.0;
  std::uint64_t seed = 0;
  bool mistuned = false;          // acceptance outside (0.05, 0.95)
  std::vector<std::string> notes;
};

void validate(const McmcConfig& cfg);

// 2 sum_{i<j} log|x_i - x_j| + sum_i (2a log|x_i| - n V(x_i)), without log Z_n.
double log_target(const Potential& p, const EnsembleParams& e, const std::vector<double>& x);

// Change of log_target when x[i] moves to y.
double log_target_delta(const Potential& p, const EnsembleParams& e, const std::vector<double>& x,
                        std::size_t i, double y);

// Metropolis acceptance probability min(1, exp(delta)).
double acceptance_probability(const Potential& p, const EnsembleParams& e,
                              const std::vector<double>& x, std::size_t i, double y);

ChainSummary run_chain(const Potential& p, const EnsembleParams& e, const McmcConfig& cfg);

// Kolmogorov-Smirnov distance between samples and the equilibrium measure.
double ks_distance(std::vector<double> samples, const EquilibriumData& eq);

}  // namespace rmt
