#include "rmt/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rmt/common.hpp"
#include "rmt/specialfn.hpp"

namespace rmt {

namespace {

bool near_diagonal(double u, double v) {
  return std::fabs(u - v) < kConfluentSwitch * std::max(1.0, std::max(std::fabs(u), std::fabs(v)));
}

void require_bessel_alpha(double alpha) {
  if (!(alpha > -0.5)) fail(ErrorCode::invalid_argument, "alpha must exceed -1/2");
}

}  // namespace

double eval_origin_bessel(double alpha, double u, double v) {
  require_bessel_alpha(alpha);
  if (!(u > 0.0 && v > 0.0)) fail(ErrorCode::domain, "origin Bessel kernel needs u, v > 0");
  const double np = alpha + 0.5, nm = alpha - 0.5;
  if (near_diagonal(u, v)) {
    const double m = 0.5 * (u + v), x = kPi * m;
    const double jp = bessel_j(np, x), jm = bessel_j(nm, x);
    const double dp = bessel_jp(np, x), dm = bessel_jp(nm, x);
    // L'Hopital on the numerator in u
    return 0.5 * kPi * m * kPi * (dp * jm - dm * jp);
  }
  const double xu = kPi * u, xv = kPi * v;
  const double num = bessel_j(np, xu) * bessel_j(nm, xv) - bessel_j(nm, xu) * bessel_j(np, xv);
  return kPi * std::sqrt(u) * std::sqrt(v) * num / (2.0 * (u - v));
}

double eval_origin_bessel_extended(double alpha, double u, double v) {
  require_bessel_alpha(alpha);
  const double np = alpha + 0.5, nm = alpha - 0.5;
  const double pref = std::pow(kPi, 2.0 * alpha + 1.0);
  auto S = [](double nu, double x) { return bessel_j_scaled(nu, x); };
  if (near_diagonal(u, v)) {
    const double m = 0.5 * (u + v), x = kPi * m;
    const double sp = S(np, x), sm = S(nm, x), sp1 = S(alpha + 1.5, x);
    // d/dx x^{-nu} J_nu(x) = -x * x^{-nu-1} J_{nu+1}(x)
    const double dsp = -x * sp1, dsm = -x * sp;
    return 0.5 * pref * (sp * sm + m * kPi * (dsp * sm - dsm * sp));
  }
  const double xu = kPi * u, xv = kPi * v;
  const double num = u * S(np, xu) * S(nm, xv) - v * S(nm, xu) * S(np, xv);
  return pref * num / (2.0 * (u - v));
}

double eval_hard_edge(double alpha, double u, double v) {
  if (!(alpha > -1.0)) fail(ErrorCode::invalid_argument, "hard-edge kernel needs alpha > -1");
  if (!(u > 0.0 && v > 0.0)) fail(ErrorCode::domain, "hard-edge kernel needs u, v > 0");
  if (near_diagonal(u, v)) {
    const double s = std::sqrt(0.5 * (u + v));
    const double ja = bessel_j(alpha, s), ja1 = bessel_j(alpha + 1.0, s);
    const double jam1 = 2.0 * alpha / s * ja - ja1;
    return 0.25 * (ja * ja - ja1 * jam1);
  }
  const double su = std::sqrt(u), sv = std::sqrt(v);
  const double num = bessel_j(alpha, su) * sv * bessel_jp(alpha, sv) -
                     bessel_j(alpha, sv) * su * bessel_jp(alpha, su);
  return num / (2.0 * (u - v));
}

double eval_sine(double u, double v) {
  const double d = kPi * (u - v);
  if (std::fabs(d) < 1e-8) return 1.0 - d * d / 6.0;
  return std::sin(d) / d;
}

double LimitKernel::operator()(double u, double v) const {
  switch (kind) {
    case KernelKind::origin_bessel: return eval_origin_bessel(alpha, u, v);
    case KernelKind::hard_edge_bessel: return eval_hard_edge(alpha, u, v);
    case KernelKind::sine: return eval_sine(u, v);
  }
  return 0.0;
}

DetResult correlation_det_full(const std::vector<std::vector<double>>& m) {
  const std::size_t n = m.size();
  for (auto& row : m)
    if (row.size() != n) fail(ErrorCode::invalid_argument, "correlation matrix must be square");
  DetResult res;
  if (n == 0) {
    res.value = 1.0;
    res.sign = 1;
    return res;
  }
  auto a = m;
  std::vector<double> scale(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (double x : a[i]) scale[i] = std::max(scale[i], std::fabs(x));
  int sign = 1;
  double logabs = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = -1.0;
    for (std::size_t i = k; i < n; ++i) {
      const double s = scale[i] > 0.0 ? std::fabs(a[i][k]) / scale[i] : 0.0;
      if (s > best) {
        best = s;
        piv = i;
      }
    }
    if (a[piv][k] == 0.0) {
      res.value = 0.0;
      res.sign = 0;
      res.log_abs = -std::numeric_limits<double>::infinity();
      return res;
    }
    if (piv != k) {
      std::swap(a[piv], a[k]);
      std::swap(scale[piv], scale[k]);
      sign = -sign;
    }
    const double p = a[k][k];
    if (p < 0.0) sign = -sign;
    logabs += std::log(std::fabs(p));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i][k] / p;
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  res.sign = sign;
  res.log_abs = logabs;
  res.value = sign * std::exp(logabs);
  return res;
}

double correlation_det(const std::vector<std::vector<double>>& m) {
  return correlation_det_full(m).value;
}

}  // namespace rmt
