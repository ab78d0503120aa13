// Limit kernels and correlation determinants.
#pragma once

#include <vector>

namespace rmt {

enum class KernelKind { origin_bessel, hard_edge_bessel, sine };

struct LimitKernel {
  KernelKind kind = KernelKind::origin_bessel;
  double alpha = 0.0;
  double operator()(double u, double v) const;
};

inline constexpr double kConfluentSwitch = 1e-6;

double eval_origin_bessel(double alpha, double u, double v);

// u^{-a} v^{-a} J^o_a(u, v) continued to all real u, v through the entire
// functions x^{-nu} J_nu(x).
double eval_origin_bessel_extended(double alpha, double u, double v);

double eval_hard_edge(double alpha, double u, double v);
double eval_sine(double u, double v);

struct DetResult {
  double value = 0.0;
  double log_abs = 0.0;
  int sign = 0;
};

// Determinant by Gaussian elimination with scaled partial pivoting.
DetResult correlation_det_full(const std::vector<std::vector<double>>& m);
double correlation_det(const std::vector<std::vector<double>>& m);

}  // namespace rmt
