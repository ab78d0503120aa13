#include "rmt/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace rmt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double site_energy(const Potential& p, const EnsembleParams& e, double y) {
  if (y == 0.0) {
    if (e.alpha > 0.0) return -kInf;
    if (e.alpha < 0.0) return kInf;
  }
  return (e.alpha == 0.0 ? 0.0 : 2.0 * e.alpha * std::log(std::fabs(y))) - e.n * p(y);
}

// Inverse of the equilibrium distribution function by bisection.
double quantile(const EquilibriumData& eq, double q) {
  double lo = eq.b(), hi = eq.a();
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double m = 0.5 * (lo + hi);
    (eval_cdf(eq, m) < q ? lo : hi) = m;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

void validate(const McmcConfig& cfg) {
  if (cfg.n_particles < 1) fail(ErrorCode::invalid_argument, "n_particles must be positive");
  if (!(cfg.burn_in >= 0 && cfg.sweeps > cfg.burn_in))
    fail(ErrorCode::invalid_argument, "sweeps must exceed burn_in >= 0");
  if (!(cfg.proposal_scale >= 0.0)) fail(ErrorCode::invalid_argument, "proposal_scale must be positive");
  if (cfg.bins < 1) fail(ErrorCode::invalid_argument, "bins must be positive");
}

double log_target(const Potential& p, const EnsembleParams& e, const std::vector<double>& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0 && e.alpha < 0.0) fail(ErrorCode::domain, "zero coordinate is a pole for alpha < 0");
    s += site_energy(p, e, x[i]);
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      if (x[i] == x[j]) return -kInf;
      s += 2.0 * std::log(std::fabs(x[i] - x[j]));
    }
  }
  return s;
}

double log_target_delta(const Potential& p, const EnsembleParams& e, const std::vector<double>& x,
                        std::size_t i, double y) {
  double d = site_energy(p, e, y) - site_energy(p, e, x[i]);
  if (std::isnan(d) || d == -kInf) return -kInf;
  if (d == kInf) return kInf;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j == i) continue;
    if (y == x[j]) return -kInf;
    d += 2.0 * (std::log(std::fabs(y - x[j])) - std::log(std::fabs(x[i] - x[j])));
  }
  return d;
}

double acceptance_probability(const Potential& p, const EnsembleParams& e,
                              const std::vector<double>& x, std::size_t i, double y) {
  const double d = log_target_delta(p, e, x, i, y);
  if (d >= 0.0) return 1.0;
  return std::exp(d);
}

double ks_distance(std::vector<double> s, const EquilibriumData& eq) {
  if (s.empty()) return 1.0;
  std::sort(s.begin(), s.end());
  const double m = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double F = eval_cdf(eq, s[i]);
    d = std::max({d, std::fabs(F - i / m), std::fabs((i + 1) / m - F)});
  }
  return d;
}

ChainSummary run_chain(const Potential& p, const EnsembleParams& e, const McmcConfig& cfg) {
  validate(cfg);
  if (e.n != cfg.n_particles) fail(ErrorCode::invalid_argument, "ensemble n must equal n_particles");
  const EquilibriumData eq = solve_equilibrium_one_band(p);
  const int n = cfg.n_particles;
  const double width = eq.a() - eq.b();

  ChainSummary sum;
  sum.seed = cfg.seed;
  sum.proposal_scale = cfg.proposal_scale > 0.0 ? cfg.proposal_scale : width / std::sqrt(double(n));

  // histogram over the support padded by 10%, bins centred symmetrically
  const double lo = eq.b() - 0.1 * width, hi = eq.a() + 0.1 * width;
  const double half = std::max(-lo, hi);
  const double hlo = -half, hhi = half;
  for (int k = 0; k <= cfg.bins; ++k) sum.bin_edges.push_back(hlo + (hhi - hlo) * k / cfg.bins);
  sum.counts.assign(cfg.bins, 0);
  const int zero_bin = static_cast<int>((0.0 - hlo) / (hhi - hlo) * cfg.bins);

  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) {
    x[i] = quantile(eq, (i + 0.5) / n);
    if (x[i] == 0.0) x[i] = 1e-3 * width;
  }

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, sum.proposal_scale);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  long long accepted = 0, proposed = 0;
  std::vector<double> pooled;
  pooled.reserve(static_cast<std::size_t>(cfg.sweeps - cfg.burn_in) * n);
  for (int sweep = 0; sweep < cfg.sweeps; ++sweep) {
    for (int i = 0; i < n; ++i) {
      const double y = x[i] + gauss(rng);
      const double d = log_target_delta(p, e, x, i, y);
      ++proposed;
      if (d >= 0.0 || unif(rng) < std::exp(d)) {
        x[i] = y;
        ++accepted;
      }
    }
    if (sweep < cfg.burn_in) continue;
    for (double v : x) {
      pooled.push_back(v);
      const int b = static_cast<int>(std::floor((v - hlo) / (hhi - hlo) * cfg.bins));
      if (b >= 0 && b < cfg.bins) ++sum.counts[b];
    }
  }
  sum.samples = static_cast<long long>(pooled.size());
  sum.acceptance_rate = static_cast<double>(accepted) / static_cast<double>(proposed);
  sum.zero_bin_mass = static_cast<double>(sum.counts[zero_bin]) / static_cast<double>(sum.samples);
  sum.ks_distance = ks_distance(std::move(pooled), eq);
  sum.mistuned = !(sum.acceptance_rate > 0.05 && sum.acceptance_rate < 0.95);
  if (sum.mistuned) sum.notes.push_back("acceptance rate outside (0.05, 0.95); proposal scale is mistuned");
  return sum;
}

}  // namespace rmt
