// Orthonormal polynomials for the varying weight w_n and the Christoffel-Darboux kernel.
#pragma once

#include <vector>

#include "rmt/common.hpp"
#include "rmt/potential.hpp"

namespace rmt {

struct WeightedQuadrature {
  std::vector<double> nodes;        // strictly increasing
  std::vector<double> log_weights;  // log(rule weight * w_n(node))
  double left = 0.0, right = 0.0;   // truncation bounds
  double origin_panel = 0.0;        // half width of the Jacobi panels at 0
  int panel_nodes = 0;
  int refinements = 0;
};

struct RecurrenceTable {
  std::vector<double> diag;     // d_0 .. d_{K-1}
  std::vector<double> offdiag;  // c_1 .. c_K (offdiag[k-1] = c_k)
  double log_mu0 = 0.0;         // log of the total mass of w_n
  Potential potential;
  EnsembleParams ensemble;

  int degree() const { return static_cast<int>(diag.size()); }
  double mu0() const;
  double c(int k) const { return offdiag.at(k - 1); }
};

struct QuadratureOptions {
  double tail_log10 = 30.0;   // discarded tail below 10^{-tail_log10} relative
  int initial_nodes = 16;     // per panel
  int panels_per_side = 8;
  int max_refinements = 6;
  double tolerance = 1e-12;   // recurrence coefficient change that ends refinement
};

// Builds a rule for w_n that resolves polynomials of degree 2K + 1.
WeightedQuadrature build_quadrature(const Potential& p, const EnsembleParams& e, int K,
                                    int nodes_per_panel, const QuadratureOptions& opt = {});

RecurrenceTable stieltjes_recurrence(const WeightedQuadrature& q, const Potential& p,
                                     const EnsembleParams& e, int K);

// Quadrature and recurrence with refinement until coefficients settle.
RecurrenceTable build_recurrence(const Potential& p, const EnsembleParams& e, int K,
                                 const QuadratureOptions& opt = {},
                                 WeightedQuadrature* final_rule = nullptr);

double eval_orthopoly(const RecurrenceTable& t, int k, double x);
double leading_coeff(const RecurrenceTable& t, int k);
double log_leading_coeff(const RecurrenceTable& t, int k);

// Values mu0^{1/2} p_j(x) for j = 0..k and their derivatives.
void scaled_orthopoly(const RecurrenceTable& t, int k, double x, std::vector<double>& p,
                      std::vector<double>* dp = nullptr);

// K_n(x, y) with n = table ensemble n unless given.
double cd_kernel(const RecurrenceTable& t, double x, double y, int n = -1);
double cd_kernel_sum(const RecurrenceTable& t, double x, double y, int n = -1);
double cd_kernel_confluent(const RecurrenceTable& t, double x, int n = -1);
double kernel_via_Y(const RecurrenceTable& t, double x, double y, int n = -1);

// First column of the RH solution Y at real x.
void y_first_column(const RecurrenceTable& t, double x, int n, cplx& y11, cplx& y21);

inline constexpr double kDiagonalSwitch = 1e-6;

}  // namespace rmt
