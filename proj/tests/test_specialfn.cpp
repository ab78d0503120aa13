#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rmt/specialfn.hpp"

using namespace rmt;

TEST_CASE("real-argument Bessel J against GSL") {
  for (double nu : {-0.75, -0.25, 0.0, 0.5, 1.0, 1.5, 2.3, 5.0})
    for (double x : {0.01, 0.5, 2.0, 7.5, 11.9, 12.1, 25.0, 80.0}) {
      double ref = oracle::bessel_j(nu, x);
      double scale = std::max(std::fabs(ref), 1.0 / std::sqrt(x) * 1e-3);
      CHECK(std::fabs(bessel_j(nu, x) - ref) / scale < 1e-11);
    }
}

TEST_CASE("half-integer closed forms") {
  CHECK(std::fabs(bessel_j(0.5, kPi)) < 1e-15);
  CHECK(std::fabs(bessel_j(0.5, kPi / 2) - 2.0 / kPi) < 1e-15);
  CHECK(bessel_j(0.5, 0.0) == 0.0);
  CHECK(bessel_j(2.0, 0.0) == 0.0);
  for (double x : {0.3, 1.7, 6.0, 13.0, 40.0}) {
    const double s = std::sqrt(2.0 / (kPi * x));
    CHECK(std::fabs(bessel_j(0.5, x) - s * std::sin(x)) < 1e-12);
    CHECK(std::fabs(bessel_j(-0.5, x) - s * std::cos(x)) < 1e-12);
    CHECK(std::fabs(bessel_j(1.5, x) - s * (std::sin(x) / x - std::cos(x))) < 1e-12);
    cplx h1 = hankel_h1(0.5, x), h2 = hankel_h2(0.5, x);
    CHECK(std::abs(h1 - cplx(0, -1) * s * std::exp(cplx(0, x))) < 1e-12);
    CHECK(std::abs(h2 - cplx(0, 1) * s * std::exp(cplx(0, -x))) < 1e-12);
  }
  // Complex arguments: H1_{1/2}(z) = -i sqrt(2/(pi z)) e^{iz}.
  for (cplx z : {cplx(0.4, 0.9), cplx(-3.0, 2.0), cplx(15.0, -4.0), cplx(2.0, -30.0)}) {
    cplx ref = cplx(0, -1) * std::sqrt(2.0 / (kPi * z)) * std::exp(cplx(0, 1) * z);
    CHECK(std::abs(hankel_h1(0.5, z) - ref) / std::abs(ref) < 1e-10);
  }
}

using oracle::cauchy_derivative;

TEST_CASE("Hankel identities") {
  for (double nu : {0.0, -0.25, 0.5, 1.0, 1.5, 2.5})
    for (cplx z : {cplx(0.7, 0.2), cplx(3.0, -1.0), cplx(-2.0, 5.0), cplx(14.0, 3.0), cplx(-20.0, -7.0), cplx(30.0, 0.0)}) {
      cplx h1 = hankel_h1(nu, z), h2 = hankel_h2(nu, z);
      CHECK(std::abs(h1 + h2 - 2.0 * bessel_j(nu, z)) / std::max(1.0, std::abs(h1)) < 1e-12);
      auto H1 = [&](cplx w) { return hankel_h1(nu, w); };
      auto H2 = [&](cplx w) { return hankel_h2(nu, w); };
      cplx wr = h1 * cauchy_derivative(H2, z) - h2 * cauchy_derivative(H1, z);
      cplx ref = cplx(0, -4) / (kPi * z);
      CHECK(std::abs(wr - ref) / std::abs(ref) <= 1e-10);
    }
}

TEST_CASE("series and asymptotic branches agree in the overlap annulus") {
  for (double nu : {0.0, 0.5, 1.0, -0.25, 1.5, 2.0})
    for (double r : {kSeriesRadius, kSeriesRadius + 2.0})
      for (int k = 0; k < 24; ++k) {
        const cplx z = std::polar(r, -kPi / 2 + kPi * k / 23.0);
        const cplx s = detail::bessel_j_series(nu, z), a = detail::bessel_j_asymptotic(nu, z);
        // Normalised by the natural size of J, so zeros of J do not inflate the measure.
        const double scale = std::abs(s) + std::exp(std::fabs(z.imag())) / std::sqrt(r);
        CHECK(std::abs(s - a) / scale <= 1e-10);
      }
}

TEST_CASE("gamma helpers") {
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
  CHECK(rgamma(0.0) == 0.0);
  CHECK(rgamma(-2.0) == 0.0);
  CHECK(rgamma(3.0) == doctest::Approx(0.5));
}

TEST_CASE("scaled Bessel is even and entire") {
  for (double nu : {0.5, 1.5, 0.25}) {
    CHECK(bessel_j_scaled(nu, 0.0) == doctest::Approx(std::pow(2.0, -nu) / std::tgamma(nu + 1)).epsilon(1e-14));
    for (double x : {0.3, 4.0, 17.0}) {
      CHECK(bessel_j_scaled(nu, -x) == doctest::Approx(bessel_j_scaled(nu, x)).epsilon(1e-14));
      CHECK(bessel_j_scaled(nu, x) == doctest::Approx(oracle::bessel_j(nu, x) * std::pow(x, -nu)).epsilon(1e-11));
    }
  }
}
