// Bessel and Hankel functions of real order on complex arguments.
//
// J uses the ascending series for |z| <= kSeriesRadius and the Hankel
// asymptotic expansion beyond. The asymptotic sums are optimally truncated
// and carry the exponentially improved (terminant) remainder, which is what
// lets both branches agree to ~1e-12 in the overlap zone. Inside the series
// disk the recessive Hankel function comes from K_nu, so no digits are lost
// to cancellation in J +- iY off the real axis or at integer order.
#pragma once

#include "rmt/common.hpp"

namespace rmt {

inline constexpr double kSeriesRadius = 12.0;

cplx bessel_j(double nu, cplx z);
cplx bessel_y(double nu, cplx z);
cplx hankel_h1(double nu, cplx z);
cplx hankel_h2(double nu, cplx z);
double bessel_j(double nu, double x);  // x > 0
double bessel_jp(double nu, double x); // derivative, x > 0

// The entire function z^{-nu} J_nu(z) at real x (even in x).
double bessel_j_scaled(double nu, double x);

double gamma_fn(double x);
double rgamma(double x);  // 1/Gamma, zero at the poles

namespace detail {
cplx bessel_j_series(double nu, cplx z);
cplx bessel_j_asymptotic(double nu, cplx z);
cplx hankel_asymptotic(int kind, double nu, cplx z);
// K_nu(w) for Re w >= 0; Temme series for |w| < 2, Steed CF2 otherwise.
cplx bessel_k(double nu, cplx w);
}  // namespace detail

}  // namespace rmt
