// Fixed Gauss rules on reference intervals.
#pragma once

#include <vector>

namespace rmt {

struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Legendre on [-1, 1].
const Rule& gauss_legendre(int npts);

// Gauss-Jacobi on [0, 1] with weight t^b; used for panels touching a power singularity.
Rule gauss_jacobi_left(int npts, double b);

// Maps the reference Gauss-Legendre rule onto [lo, hi].
Rule legendre_on(double lo, double hi, int npts);

}  // namespace rmt
