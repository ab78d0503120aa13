// Rescaled finite-n kernels at the origin against the Bessel limit.
#pragma once

#include <string>
#include <vector>

#include "rmt/equilibrium.hpp"
#include "rmt/orthopoly.hpp"

namespace rmt {

struct KernelTable {
  std::vector<double> grid;    // strictly increasing, positive
  std::vector<double> values;  // row-major K-hat_n(u_i, u_j)
  int n = 0;
  double alpha = 0.0;
  double psi0 = 0.0;
  std::string potential;

  double at(std::size_t i, std::size_t j) const { return values[i * grid.size() + j]; }
};

// (1 / (n psi(0))) K_n(u / (n psi(0)), v / (n psi(0))).
double rescaled_kernel(const RecurrenceTable& t, const EquilibriumData& eq, double u, double v,
                       int n = -1);

// |u|^{-a} |v|^{-a} times the rescaled kernel, for u, v of either sign.
double extended_rescaled(const RecurrenceTable& t, const EquilibriumData& eq, double u, double v,
                         int n = -1);

// det K_n(y_i, y_j).
double finite_n_correlations(const RecurrenceTable& t, const std::vector<double>& points, int n = -1);

// n f(u / (n psi(0))), which tends to pi u.
double tilde_u(const EquilibriumData& eq, double u, int n);

KernelTable make_kernel_table(const RecurrenceTable& t, const EquilibriumData& eq,
                              const std::vector<double>& grid, int n = -1);

struct SweepResult {
  std::vector<int> ns;
  std::vector<double> weighted_error;    // max |K-hat - J| / (u^a v^a)
  std::vector<double> unweighted_error;  // max |K-hat - J|
  double slope = 0.0;
  double slope_unweighted = 0.0;
  bool strictly_decreasing = false;
  std::vector<KernelTable> tables;
};

std::vector<double> default_universality_grid();

SweepResult universality_sweep(const Potential& p, double alpha, const std::vector<int>& ns,
                               const std::vector<double>& grid, const QuadratureOptions& opt = {});

}  // namespace rmt
