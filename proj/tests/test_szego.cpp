#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rmt/szego.hpp"

using namespace rmt;

namespace {

SupportBands two_band() { return SupportBands{{{-1.5, -0.7}, {-0.3, 1.0}}}; }
SupportBands one_band(double lo, double hi) { return SupportBands{{{lo, hi}}}; }

}  // namespace

TEST_CASE("band and gap moments") {
  auto s = two_band();
  for (int k = 0; k <= s.gaps(); ++k) CHECK(std::abs(band_gap_moments(s, 0.0, k).band) == 0.0);
  auto m = band_gap_moments(one_band(-1.0, 1.0), 0.5, 0);
  CHECK(std::fabs(m.band.imag()) < 1e-14 * std::max(1.0, std::fabs(m.band.real())));
  // Independent oracle: (1/2 pi i) int 2a log|x| / R_+^{1/2}, R_+^{1/2} = i sqrt(1-x^2) on (-1,1).
  double ref = -oracle::integrate([](double x) { return std::log(std::fabs(x)) / std::sqrt(1 - x * x); }, -1, 1, {0.0}) / (2 * kPi);
  CHECK(m.band.real() == doctest::Approx(ref).epsilon(1e-10));
  // R^{1/2} keeps one sign on a gap.
  int sign = 0;
  for (int i = 1; i < 50; ++i) {
    cplx r = sqrt_r(s, -0.7 + 0.4 * i / 50.0);
    CHECK(std::fabs(r.imag()) <= 1e-14 * std::abs(r));
    int sg = r.real() > 0 ? 1 : -1;
    if (sign == 0) sign = sg;
    CHECK(sg == sign);
  }
  // Gap moment by adaptive quadrature; the integrand has inverse square-root endpoints.
  auto g = band_gap_moments(s, 1.0, 1);
  double gref = oracle::integrate([&](double x) { return x / sqrt_r(s, x).real(); }, -0.7, -0.3);
  CHECK(g.gaps[0] == doctest::Approx(gref).epsilon(1e-8));
}

TEST_CASE("xi solve") {
  CHECK(solve_xi(one_band(-1, 2), 0.7).xi.empty());
  auto z = solve_xi(two_band(), 0.0);
  REQUIRE(z.xi.size() == 1);
  CHECK(z.xi[0] == 0.0);
  auto sd = solve_xi(two_band(), 1.0);
  CHECK(sd.system_residual <= 1e-10);
  // Residual recomputed from the stored system.
  double r = std::fabs(sd.a_matrix[0] * sd.xi[0] + sd.rhs[0]);
  CHECK(r <= 1e-10);
  // Linear in alpha.
  auto half = solve_xi(two_band(), 0.5);
  CHECK(half.xi[0] == doctest::Approx(0.5 * sd.xi[0]).epsilon(1e-12));
}

TEST_CASE("symmetric and reflected layouts") {
  SupportBands sym{{{-2.0, -1.0}, {-0.5, 0.5}, {1.0, 2.0}}};
  auto sd = solve_xi(sym, 1.0);
  REQUIRE(sd.xi.size() == 2);
  CHECK(std::fabs(sd.xi[0] + sd.xi[1]) <= 1e-10);
  SupportBands s{{{-1.5, -0.7}, {-0.3, 1.0}, {1.4, 2.0}}};
  SupportBands r{{{-2.0, -1.4}, {-1.0, 0.3}, {0.7, 1.5}}};
  auto a = solve_xi(s, 0.5), b = solve_xi(r, 0.5);
  for (size_t j = 0; j < 2; ++j) CHECK(std::fabs(a.xi[j] + b.xi[1 - j]) <= 1e-10);
}

TEST_CASE("Szego function jumps and symmetry") {
  for (double alpha : {0.5, 1.0}) {
    auto sd = solve_xi(two_band(), alpha);
    for (double x : {-1.4, -1.0, -0.75, -0.25, -0.01, 0.02, 0.5, 0.95}) {
      cplx p = eval_D(sd, x, 1), m = eval_D(sd, x, -1);
      CHECK(std::abs(p * m / std::pow(std::fabs(x), 2 * alpha) - 1.0) <= 1e-8);
    }
    for (double x : {-0.65, -0.5, -0.35}) {
      cplx ratio = eval_D(sd, x, 1) / eval_D(sd, x, -1);
      CHECK(std::abs(ratio - std::exp(cplx(0, 2 * kPi * sd.xi[0]))) <= 1e-8);
    }
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(-3, 3);
    for (int i = 0; i < 10; ++i) {
      cplx z(d(rng), d(rng));
      CHECK(std::abs(eval_phi_szego(sd, std::conj(z)) - std::conj(eval_phi_szego(sd, z))) < 1e-12);
      // Decomposition against the literal Cauchy integral formula.
      CHECK(std::abs(eval_phi_szego(sd, z) - eval_phi_szego_direct(sd, z)) < 1e-9);
    }
  }
}

TEST_CASE("behaviour at infinity") {
  auto sd = solve_xi(two_band(), 1.0);
  cplx p2 = eval_phi_szego(sd, cplx(0, 1e2)), p3 = eval_phi_szego(sd, cplx(0, 1e3)),
       p4 = eval_phi_szego(sd, cplx(0, 1e4));
  double d1 = std::abs(p3 - p2), d2 = std::abs(p4 - p3);
  CHECK(d2 < d1);
  CHECK(d1 / d2 == doctest::Approx(10.0).epsilon(0.1));
  cplx num = d_infinity_numeric(sd);
  CHECK(std::abs(num - d_infinity(sd)) < 1e-9);
  // Centred single band: D_inf = (r/2)^alpha.
  for (double alpha : {0.5, 1.0, -0.25}) {
    auto one = solve_xi(one_band(-2.0, 2.0), alpha);
    CHECK(std::abs(d_infinity(one) - std::pow(1.0, alpha)) < 1e-12);
    auto one3 = solve_xi(one_band(-3.0, 3.0), alpha);
    CHECK(std::abs(d_infinity(one3) - std::pow(1.5, alpha)) < 1e-12);
  }
}

TEST_CASE("identity Szego function at alpha = 0") {
  auto sd = solve_xi(two_band(), 0.0);
  CHECK(std::abs(eval_phi_szego(sd, cplx(0.3, 0.4))) == 0.0);
  CHECK(std::abs(eval_D(sd, 0.5, 1) - 1.0) == 0.0);
  CHECK(std::abs(d_infinity(sd) - 1.0) == 0.0);
  auto rep = check_szego(sd, default_band_probes(sd.support, 8), default_gap_probes(sd.support, 8));
  CHECK(rep.max_band_jump <= 1e-12);
  CHECK(rep.max_gap_phase <= 1e-12);
}

TEST_CASE("boundedness near the origin") {
  auto one = solve_xi(one_band(-1.0, 1.5), 0.5);
  auto rep = check_szego(one, default_band_probes(one.support, 6), {});
  CHECK(rep.bound_ratio_lower <= 2.0);
  CHECK(rep.bound_ratio_upper <= 2.0);
  for (double alpha : {0.5, 1.0}) {
    auto sd = solve_xi(two_band(), alpha);
    auto r = check_szego(sd, default_band_probes(sd.support, 8), default_gap_probes(sd.support, 8));
    CHECK(r.max_band_jump <= 1e-8);
    CHECK(r.max_gap_phase <= 1e-8);
    CHECK(r.system_residual <= 1e-10);
    CHECK(r.bound_ratio_lower <= 2.0);
    CHECK_FALSE(r.growth_trend);
  }
}

TEST_CASE("Szego errors") {
  auto sd = solve_xi(two_band(), 0.5);
  CHECK_THROWS_AS(eval_D(sd, 0.0, 1), Error);
  CHECK_THROWS_AS(eval_D(sd, 0.5, 0), Error);
  CHECK_THROWS_AS(solve_xi(SupportBands{{{0.1, 1.0}}}, 0.5), Error);
}
