#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rmt/equilibrium.hpp"

using namespace rmt;

namespace {

const Potential kGauss{{0, 0, 1}};
using oracle::semicircle_log_potential;

}  // namespace

TEST_CASE("semicircle support and density") {
  auto eq = solve_equilibrium_one_band(kGauss);
  CHECK(std::fabs(eq.b() + std::sqrt(2.0)) < 1e-8);
  CHECK(std::fabs(eq.a() - std::sqrt(2.0)) < 1e-8);
  CHECK(std::fabs(eq.psi0 - std::sqrt(2.0) / kPi) < 1e-8);
  CHECK(std::fabs(eval_density(eq, 0.0) - std::sqrt(2.0) / kPi) < 1e-12);
  for (double x : {0.1, 0.7, 1.3})
    CHECK(std::fabs(eval_density(eq, x) - std::sqrt(2.0 - x * x) / kPi) < 1e-12);
  for (double x : {0.3, 0.9, 1.4}) CHECK(eval_density(eq, -x) == doctest::Approx(eval_density(eq, x)).epsilon(1e-14));
  CHECK(eval_density(eq, eq.a()) == doctest::Approx(0.0));
  CHECK(eval_density(eq, 2.0) == 0.0);
  CHECK(eval_density(eq, -3.0) == 0.0);
}

TEST_CASE("variational conditions against a quadrature oracle") {
  auto eq = solve_equilibrium_one_band(kGauss);
  std::vector<double> inside;
  for (int i = 1; i <= 50; ++i) inside.push_back(eq.b() + (eq.a() - eq.b()) * i / 51.0);
  double worst = 0.0;
  for (double x : inside) worst = std::max(worst, std::fabs(2 * semicircle_log_potential(x) - x * x - eq.ell));
  CHECK(worst <= 1e-8);
  for (double x : {-2.0, 2.0}) CHECK(eq.ell + x * x - 2 * semicircle_log_potential(x) > 0.0);
  // Library's own log potential agrees with the oracle.
  for (double x : {-1.2, 0.0, 0.4, 2.0})
    CHECK(std::fabs(log_potential(eq, x) - semicircle_log_potential(x)) < 1e-10);
  auto rep = check_variational(eq, inside, {-2.0, 2.0});
  CHECK(rep.max_inside_residual <= 1e-8);
  CHECK(rep.min_outside_margin > 0.0);
  CHECK_FALSE(rep.singular);
  auto mid = check_variational(eq, {0.0}, {});
  CHECK(mid.max_inside_residual == std::fabs(2 * log_potential(eq, 0.0) - 0.0 - eq.ell));
}

TEST_CASE("quartic potential") {
  auto eq = solve_equilibrium_one_band(Potential{{0, 0, 0, 0, 1}});
  CHECK(eq.a() == doctest::Approx(-eq.b()).epsilon(1e-12));
  // x^4: t^4 = 4/3.
  CHECK(std::fabs(eq.a() - std::pow(4.0 / 3.0, 0.25)) < 1e-10);
  double mass = oracle::integrate([&](double x) { return eval_density(eq, x); }, eq.b(), eq.a());
  CHECK(std::fabs(mass - 1.0) < 1e-10);
  for (int i = 0; i <= 20; ++i) CHECK(eval_density(eq, eq.b() + (eq.a() - eq.b()) * i / 20.0) >= 0.0);
  CHECK(eval_cdf(eq, 0.0) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("g-function") {
  auto eq = solve_equilibrium_one_band(kGauss);
  for (double x : {-3.0, -2.0}) {
    cplx jump = eval_g(eq, x, 1) - eval_g(eq, x, -1);
    CHECK(std::fabs(jump.real()) < 1e-12);
    CHECK(std::fabs(jump.imag() - 2 * kPi) < 1e-12);
  }
  cplx far = eval_g(eq, cplx(0, 1e6)) - std::log(cplx(0, 1e6));
  CHECK(std::abs(far) < 1e-9);
  CHECK(std::fabs(eval_g(eq, 3.0).imag()) < 1e-14);
  CHECK(std::fabs(eval_g(eq, 3.0).real() - log_potential(eq, 3.0)) < 1e-12);
}

TEST_CASE("phi-function") {
  auto eq = solve_equilibrium_one_band(kGauss);
  CHECK(std::abs(eval_phi(eq, eq.a())) < 1e-14);
  for (double x : {-1.1, -0.3, 0.2, 0.9}) {
    cplx gj = eval_g(eq, x, 1) - eval_g(eq, x, -1);
    CHECK(std::abs(2.0 * eval_phi(eq, x, 1) - gj) <= 1e-9);
  }
  for (double x : {-1.0, -0.2, 0.5, 1.2})
    for (double y : {1e-3, -1e-3, 1e-2}) CHECK(eval_phi(eq, cplx(x, y)).real() > 0.0);
  cplx p0 = phi_plus_at_zero(eq);
  CHECK(std::fabs(p0.imag() - kPi * 0.5) < 1e-12);
}

TEST_CASE("conformal map f") {
  auto eq = solve_equilibrium_one_band(kGauss);
  CHECK(std::abs(conformal_map_f(eq, 0.0)) == 0.0);
  const double h = 1e-5;
  double fd = (conformal_map_f(eq, h).real() - conformal_map_f(eq, -h).real()) / (2 * h);
  CHECK(std::fabs(fd - std::sqrt(2.0)) < 1e-8);
  double prev = 0.0;
  for (int i = 1; i <= 10; ++i) {
    double x = eq.delta * i / 10.5;
    double f = conformal_map_f(eq, x).real();
    CHECK(f > prev);
    CHECK(std::fabs(conformal_map_f(eq, x).imag()) < 1e-14);
    prev = f;
  }
  // Closed form for the semicircle: f(x) = pi (F(x) - 1/2).
  CHECK(std::fabs(conformal_map_f(eq, 0.3).real() - kPi * (eval_cdf(eq, 0.3) - 0.5)) < 1e-12);
}

TEST_CASE("sqrt_r sign conventions") {
  auto eq = solve_equilibrium_one_band(kGauss);
  cplx big = sqrt_r(eq.support, cplx(1e4, 0));
  CHECK(big.real() == doctest::Approx(1e4).epsilon(1e-6));
  cplx up = sqrt_r(eq.support, 0.5, 1), dn = sqrt_r(eq.support, 0.5, -1);
  CHECK(std::abs(up + dn) < 1e-14);
}
