// Independent reference computations shared by the unit tests.
#pragma once

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_bessel.h>

#include <cmath>
#include <complex>
#include <algorithm>
#include <functional>
#include <string>
#include <stdexcept>
#include <vector>

namespace oracle {

inline double call(double x, void* p) { return (*static_cast<std::function<double(double)>*>(p))(x); }

// Roundoff warnings are tolerated when the error estimate is still small.
inline void check(int status, double r, double err) {
  if (status == GSL_SUCCESS) return;
  if ((status == GSL_EROUND || status == GSL_ESING) && err <= 1e-11 * std::max(1.0, std::fabs(r))) return;
  throw std::runtime_error(std::string("quadrature oracle failed: ") + gsl_strerror(status));
}

// Adaptive QAGS on [a, b] with singular-point breakpoints.
inline double integrate(std::function<double(double)> f, double a, double b, std::vector<double> breaks = {},
                        double rel = 1e-13) {
  gsl_set_error_handler_off();
  rel = std::max(rel, 1e-13);  // GSL refuses anything below 50 eps
  gsl_integration_workspace* w = gsl_integration_workspace_alloc(4000);
  gsl_function F{&call, &f};
  double r = 0, err = 0;
  int st;
  if (breaks.empty()) {
    st = gsl_integration_qags(&F, a, b, 0.0, rel, 4000, w, &r, &err);
  } else {
    std::vector<double> pts{a};
    pts.insert(pts.end(), breaks.begin(), breaks.end());
    pts.push_back(b);
    st = gsl_integration_qagp(&F, pts.data(), pts.size(), 0.0, rel, 4000, w, &r, &err);
  }
  gsl_integration_workspace_free(w);
  check(st, r, err);
  return r;
}

inline double integrate_real_line(std::function<double(double)> f, double rel = 1e-13) {
  gsl_set_error_handler_off();
  rel = std::max(rel, 1e-13);
  gsl_integration_workspace* w = gsl_integration_workspace_alloc(4000);
  gsl_function F{&call, &f};
  double r = 0, err = 0;
  const int st = gsl_integration_qagi(&F, 0.0, rel, 4000, w, &r, &err);
  gsl_integration_workspace_free(w);
  check(st, r, err);
  return r;
}

inline double bessel_j(double nu, double x) { return gsl_sf_bessel_Jnu(nu, x); }

// int log|x - s| dmu(s) for the semicircle on [-sqrt 2, sqrt 2], computed in
// s = sqrt(2) sin t and split at the logarithmic singularity.
inline double semicircle_log_potential(double x) {
  const double pi = 3.141592653589793, r = std::sqrt(2.0);
  auto f = [x, r, pi](double t) { return std::log(std::fabs(x - r * std::sin(t))) * 2.0 * std::cos(t) * std::cos(t) / pi; };
  if (x > -r && x < r) {
    const double tx = std::asin(x / r);
    return integrate(f, -pi / 2, tx) + integrate(f, tx, pi / 2);
  }
  return integrate(f, -pi / 2, pi / 2);
}

// Derivative of an analytic function from its values on a small circle
// (trapezoidal Cauchy integral, spectrally accurate).
template <class F>
std::complex<double> cauchy_derivative(F f, std::complex<double> z) {
  const double rho = std::min(0.5, 0.5 * std::abs(z));
  const int m = 64;
  std::complex<double> s = 0.0;
  for (int k = 0; k < m; ++k) {
    const auto e = std::polar(1.0, 2 * 3.141592653589793 * k / m);
    s += f(z + rho * e) / e;
  }
  return s / (m * rho);
}

}  // namespace oracle
