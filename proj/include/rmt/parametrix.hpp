// Bessel model problem Psi_a, the one-band outer parametrix and the local
// parametrix at the origin.
#pragma once

#include <string>
#include <vector>

#include "rmt/common.hpp"
#include "rmt/equilibrium.hpp"
#include "rmt/potential.hpp"
#include "rmt/szego.hpp"

namespace rmt {

struct Matrix2 {
  cplx a = 1.0, b = 0.0, c = 0.0, d = 1.0;  // [[a, b], [c, d]]

  static Matrix2 identity() { return {}; }
  static Matrix2 diag(cplx x, cplx y) { return {x, 0.0, 0.0, y}; }
  cplx det() const { return a * d - b * c; }
  Matrix2 inverse() const;
  double max_abs() const;  // max-entry norm
  Matrix2 operator*(const Matrix2& o) const;
  Matrix2 operator-(const Matrix2& o) const;
};

// Rays Gamma_j at angle (j-1) pi/4; sector k lies between Gamma_k and Gamma_{k+1}.
// Points on a ray belong to the counter-clockwise sector.
int sector_of(cplx zeta);

cplx eval_omega(double alpha, cplx z);
// W(z) given f(z); errors when arg f sits on 0, +-pi/2 or pi.
cplx eval_W(double alpha, cplx fz, cplx z);

// Jump matrix on Gamma_j and its orientation (+1 outward, -1 toward 0).
Matrix2 psi_jump(double alpha, int ray);
int ray_orientation(int ray);

Matrix2 psi_model(double alpha, cplx zeta);
// Boundary value of Psi on Gamma_ray at radius r from the + (side = 1) or - side.
Matrix2 psi_model_boundary(double alpha, double r, int ray, int side);
// max-entry norm of Psi_+ - Psi_- J on Gamma_ray at radius r.
double psi_jump_residual(double alpha, double r, int ray);
// Sector value reached counter-clockwise from sector I against clockwise.
double psi_cyclic_residual(double alpha, cplx zeta);

// P^(inf) for a single band. side selects the boundary value on the band.
Matrix2 outer_parametrix(const EquilibriumData& eq, const SzegoData& sd, cplx z, int side = 0);

// E(z) of the local construction (analytic in the disk).
Matrix2 local_E(const EquilibriumData& eq, const SzegoData& sd, cplx z, double delta);
Matrix2 local_parametrix(const EquilibriumData& eq, const SzegoData& sd, const EnsembleParams& e,
                         cplx z, double delta);

struct MatchingReport {
  std::vector<int> ns;
  std::vector<double> max_residual;               // per n
  std::vector<std::vector<double>> point_residual;  // per n, per boundary point
  std::vector<double> angles;                     // boundary sample angles used
  double slope = 0.0;                             // log residual vs log n
  std::string norm = "max-entry";
  double delta = 0.0;
};

MatchingReport check_matching(const EquilibriumData& eq, const SzegoData& sd, double alpha,
                              const std::vector<int>& ns, double delta = 0.0, int points = 64,
                              double exclusion = 0.05);

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace rmt
