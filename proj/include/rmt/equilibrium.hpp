// One-band equilibrium measure, g- and phi-functions, and the local conformal map f.
#pragma once

#include <string>
#include <vector>

#include "rmt/common.hpp"
#include "rmt/potential.hpp"

namespace rmt {

struct SupportBands {
  std::vector<std::pair<double, double>> bands;  // [b_{j-1}, a_j], increasing

  int gaps() const { return static_cast<int>(bands.size()) - 1; }
  double left() const { return bands.front().first; }
  double right() const { return bands.back().second; }
  bool contains_interior(double x) const;
  std::vector<double> endpoints() const;  // b_0, a_1, b_1, ..., a_{N+1}
  void validate() const;
};

// R^{1/2}(z) = prod over endpoints p of sqrt(z - p) with principal roots,
// which behaves like z^{N+1} at infinity. For real z, side = +1/-1 picks the
// boundary value from above/below; side = 0 is allowed off the support.
cplx sqrt_r(const SupportBands& s, cplx z, int side = 0);

struct EquilibriumData {
  Potential potential;
  SupportBands support;
  double c = 0.0, r = 0.0;       // band center and half width
  std::vector<double> vcheb;     // V'(c + r t) = sum v_k T_k(t)
  std::vector<double> h_cheb;    // h(c + r t) = sum h_k T_k(t)
  double ell = 0.0;              // Lagrange multiplier
  std::vector<double> omega;     // gap masses (empty for one band)
  double psi0 = 0.0;
  double delta = 0.0;            // default local disk radius at 0
  int newton_iterations = 0;

  double b() const { return support.left(); }
  double a() const { return support.right(); }
};

EquilibriumData solve_equilibrium_one_band(const Potential& p);

double eval_density(const EquilibriumData& eq, double x);
cplx eval_h(const EquilibriumData& eq, cplx z);

// Distribution function of mu_V, exact from the Chebyshev data.
double eval_cdf(const EquilibriumData& eq, double x);

// Real part of the log potential: int log|x - s| psi(s) ds.
double log_potential(const EquilibriumData& eq, double x);

// g(z) = int log(z - s) psi(s) ds, principal log. For real z on (-inf, a]
// side selects the boundary value; side = 0 there is an error.
cplx eval_g(const EquilibriumData& eq, cplx z, int side = 0);

// phi(z) = (1/2) int_z^a R^{1/2}(s) h(s) ds along a path in one half-plane.
cplx eval_phi(const EquilibriumData& eq, cplx z, int side = 0);

// phi_+(0) = i pi mu([0, a]).
cplx phi_plus_at_zero(const EquilibriumData& eq);

// f(z) = pi int_0^z psi-hat(s) ds, psi-hat the analytic continuation of psi.
cplx conformal_map_f(const EquilibriumData& eq, cplx z, double delta = 0.0);

struct VariationalReport {
  double max_inside_residual = 0.0;
  double min_outside_margin = 0.0;
  double h_min_on_band = 0.0;
  bool singular = false;
  std::vector<std::string> notes;
};

VariationalReport check_variational(const EquilibriumData& eq,
                                    const std::vector<double>& grid_inside,
                                    const std::vector<double>& grid_outside,
                                    double tol = 1e-3);

// Chebyshev helpers shared with other modules.
double chebyshev_sum(const std::vector<double>& coef, double t);
cplx chebyshev_sum(const std::vector<double>& coef, cplx t);
template <class F>
std::vector<double> chebyshev_fit(F&& f, int m);

}  // namespace rmt

#include "rmt/detail/chebyshev_fit.hpp"
