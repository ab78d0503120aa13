// Szego function D for the weight |x|^{2a} on a union of bands containing 0.
#pragma once

#include <string>
#include <vector>

#include "rmt/common.hpp"
#include "rmt/equilibrium.hpp"

namespace rmt {

struct SzegoData {
  SupportBands support;
  double alpha = 0.0;
  std::vector<double> xi;        // xi_1 .. xi_N
  std::vector<double> a_matrix;  // N x N, row-major, rows k = 0..N-1
  std::vector<double> rhs;       // band moments k = 0..N-1 (real)
  double cond_a = 1.0;
  double system_residual = 0.0;  // max |A xi + rhs|
  double band_moment_top = 0.0;  // k = N band moment
  std::vector<double> gap_moments_top;
  cplx d_infinity = 1.0;
  int panel_nodes = 20;

  int gaps() const { return support.gaps(); }
};

struct MomentResult {
  cplx band;                 // (1/2 pi i) int_J 2a log|x| x^k / R_+^{1/2}(x) dx
  std::vector<double> gaps;  // int over gap j of x^k / R^{1/2}(x) dx
};

MomentResult band_gap_moments(const SupportBands& s, double alpha, int k);

SzegoData solve_xi(const SupportBands& s, double alpha);

// Phi with D = exp(Phi). Off the real segment [b_0, a_{N+1}] side may be 0;
// on it side = +1/-1 selects the boundary value.
cplx eval_phi_szego(const SzegoData& sd, cplx z, int side = 0);
cplx eval_D(const SzegoData& sd, cplx z, int side = 0);

// The defining Cauchy-integral formula evaluated literally by quadrature.
// Slower and only accurate away from the cut; used for cross-checks.
cplx eval_phi_szego_direct(const SzegoData& sd, cplx z);

cplx d_infinity(const SzegoData& sd);
// Richardson limit of D along the imaginary axis.
cplx d_infinity_numeric(const SzegoData& sd, double radius = 1e5);

struct SzegoReport {
  double max_band_jump = 0.0;    // max |D+D- / |x|^{2a} - 1|
  double max_gap_phase = 0.0;    // max |D+/D- - e^{2 pi i xi_j}|
  double system_residual = 0.0;
  double cond_a = 1.0;
  double bound_ratio_lower = 1.0;  // max/min of |z^{-a} D(z)| along the probe sequence
  double bound_ratio_upper = 1.0;  // max/min of |z^{a} / D(z)|
  bool growth_trend = false;
  cplx d_inf_closed = 1.0, d_inf_numeric = 1.0;
  std::vector<std::string> notes;
};

// Probes at relative margin from band endpoints (and from 0).
std::vector<double> default_band_probes(const SupportBands& s, int per_band, double margin = 1e-3);
std::vector<double> default_gap_probes(const SupportBands& s, int per_gap, double margin = 1e-3);

SzegoReport check_szego(const SzegoData& sd, const std::vector<double>& band_probes,
                        const std::vector<double>& gap_probes, int m_min = 4, int m_max = 20);

}  // namespace rmt
