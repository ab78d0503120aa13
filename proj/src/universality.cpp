#include "rmt/universality.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "rmt/kernels.hpp"
#include "rmt/parametrix.hpp"

namespace rmt {

namespace {

int resolve_n(const RecurrenceTable& t, int n) { return n > 0 ? n : t.ensemble.n; }

double to_x(const EquilibriumData& eq, double u, int n) {
  const double x = u / (n * eq.psi0);
  if (!(x > eq.b() && x < eq.a()))
    fail(ErrorCode::domain, "rescaled point leaves the support; increase n or shrink u");
  return x;
}

}  // namespace

double rescaled_kernel(const RecurrenceTable& t, const EquilibriumData& eq, double u, double v, int n) {
  n = resolve_n(t, n);
  const double s = n * eq.psi0;
  return cd_kernel(t, to_x(eq, u, n), to_x(eq, v, n), n) / s;
}

double extended_rescaled(const RecurrenceTable& t, const EquilibriumData& eq, double u, double v, int n) {
  if (u == 0.0 || v == 0.0) fail(ErrorCode::domain, "extended kernel needs u, v != 0");
  const double a = t.ensemble.alpha;
  return std::pow(std::fabs(u), -a) * std::pow(std::fabs(v), -a) * rescaled_kernel(t, eq, u, v, n);
}

double finite_n_correlations(const RecurrenceTable& t, const std::vector<double>& points, int n) {
  std::vector<std::vector<double>> m(points.size(), std::vector<double>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < points.size(); ++j) m[i][j] = cd_kernel(t, points[i], points[j], n);
  return correlation_det(m);
}

double tilde_u(const EquilibriumData& eq, double u, int n) {
  const double x = u / (n * eq.psi0);
  return n * conformal_map_f(eq, x, std::max(eq.delta, std::fabs(x))).real();
}

KernelTable make_kernel_table(const RecurrenceTable& t, const EquilibriumData& eq,
                              const std::vector<double>& grid, int n) {
  KernelTable tab;
  tab.grid = grid;
  tab.n = resolve_n(t, n);
  tab.alpha = t.ensemble.alpha;
  tab.psi0 = eq.psi0;
  tab.potential = t.potential.describe();
  const std::size_t m = grid.size();
  tab.values.assign(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      const double k = rescaled_kernel(t, eq, grid[i], grid[j], tab.n);
      tab.values[i * m + j] = k;
      tab.values[j * m + i] = k;
    }
  return tab;
}

std::vector<double> default_universality_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 10; ++i) g.push_back(0.25 * i);
  return g;
}

SweepResult universality_sweep(const Potential& p, double alpha, const std::vector<int>& ns,
                               const std::vector<double>& grid, const QuadratureOptions& opt) {
  if (ns.empty()) fail(ErrorCode::invalid_argument, "empty n list");
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (!(grid[i] > 0.0) || (i > 0 && grid[i] <= grid[i - 1]))
      fail(ErrorCode::invalid_argument, "grid must be positive and strictly increasing");
  const EquilibriumData eq = solve_equilibrium_one_band(p);
  SweepResult res;
  res.ns = ns;
  const std::size_t m = grid.size();
  std::vector<double> limit(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) limit[i * m + j] = eval_origin_bessel(alpha, grid[i], grid[j]);
  // Tables for different n are independent; results are gathered in list order.
  std::vector<std::future<KernelTable>> jobs;
  for (int n : ns)
    jobs.push_back(std::async(std::launch::async, [&, n] {
      const RecurrenceTable t = build_recurrence(p, EnsembleParams{alpha, n}, n, opt);
      return make_kernel_table(t, eq, grid, n);
    }));
  for (auto& job : jobs) {
    KernelTable tab = job.get();
    double we = 0.0, ue = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        const double err = std::fabs(tab.at(i, j) - limit[i * m + j]);
        ue = std::max(ue, err);
        we = std::max(we, err / std::pow(grid[i] * grid[j], alpha));
      }
    res.weighted_error.push_back(we);
    res.unweighted_error.push_back(ue);
    res.tables.push_back(std::move(tab));
  }
  res.strictly_decreasing = true;
  for (std::size_t i = 1; i < ns.size(); ++i)
    if (!(res.weighted_error[i] < res.weighted_error[i - 1])) res.strictly_decreasing = false;
  if (ns.size() >= 2) {
    const std::vector<double> xs(ns.begin(), ns.end());
    res.slope = loglog_slope(xs, res.weighted_error);
    res.slope_unweighted = loglog_slope(xs, res.unweighted_error);
  }
  return res;
}

}  // namespace rmt
