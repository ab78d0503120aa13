#pragma once

#include <cmath>
#include <vector>

namespace rmt {

// Coefficients of the degree m-1 Chebyshev interpolant at Gauss-Chebyshev
// points; exact for polynomials of degree below m.
template <class F>
std::vector<double> chebyshev_fit(F&& f, int m) {
  std::vector<double> fv(m), c(m, 0.0);
  for (int j = 0; j < m; ++j) fv[j] = f(std::cos(kPi * (j + 0.5) / m));
  for (int k = 0; k < m; ++k) {
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += fv[j] * std::cos(kPi * k * (j + 0.5) / m);
    c[k] = (k == 0 ? 1.0 : 2.0) * s / m;
  }
  return c;
}

}  // namespace rmt
