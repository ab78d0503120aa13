#include "rmt/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rmt/quadrature.hpp"

namespace rmt {

namespace {

// Chebyshev coefficients of q(c + r t) for a polynomial q (ascending coeffs).
std::vector<double> poly_cheb(const std::vector<double>& q, double c, double r) {
  const int m = static_cast<int>(q.size()) + 1;
  return chebyshev_fit(
      [&](double t) {
        const double x = c + r * t;
        double s = 0.0;
        for (auto it = q.rbegin(); it != q.rend(); ++it) s = s * x + *it;
        return s;
      },
      m);
}

std::vector<double> derivative_coeffs(const std::vector<double>& p) {
  std::vector<double> d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(k * p[k]);
  if (d.empty()) d.push_back(0.0);
  return d;
}

// x * q(x) as ascending coefficients, shifted so that t-weighting can be applied:
// t q(c + r t) = ((x - c)/r) q(x).
std::vector<double> times_t(const std::vector<double>& q, double c, double r) {
  std::vector<double> out(q.size() + 1, 0.0);
  for (std::size_t k = 0; k < q.size(); ++k) {
    out[k + 1] += q[k] / r;
    out[k] -= c * q[k] / r;
  }
  return out;
}

double coef(const std::vector<double>& v, std::size_t k) { return k < v.size() ? v[k] : 0.0; }

// w = t + sqrt(t-1) sqrt(t+1) with its logarithm, honoring boundary sides.
void joukowski_inverse(cplx t, int side, cplx& w, cplx& logw) {
  if (t.imag() != 0.0) {
    w = t + std::sqrt(t - 1.0) * std::sqrt(t + 1.0);
    logw = std::log(w);
    return;
  }
  const double x = t.real();
  if (x >= 1.0) {
    w = x + std::sqrt(x * x - 1.0);
    logw = std::log(w.real());
  } else if (x > -1.0) {
    if (side == 0) fail(ErrorCode::domain, "point on the band needs a side flag");
    const double th = std::acos(x);
    w = std::polar(1.0, side * th);
    logw = cplx(0.0, side * th);
  } else {
    if (side == 0) fail(ErrorCode::domain, "point left of the support needs a side flag");
    const double wr = x - std::sqrt(x * x - 1.0);
    w = wr;
    logw = cplx(std::log(-wr), side * kPi);
  }
}

// L_j(t) = int_{-1}^{1} log(t - s) T_j(s) / sqrt(1 - s^2) ds.
cplx cheb_log_moment(int j, cplx w, cplx logw) {
  if (j == 0) return kPi * (logw - std::log(2.0));
  return -(kPi / j) * std::pow(w, -j);
}

double t_of(const EquilibriumData& eq, double x) { return (x - eq.c) / eq.r; }

}  // namespace

bool SupportBands::contains_interior(double x) const {
  for (auto& b : bands)
    if (x > b.first && x < b.second) return true;
  return false;
}

std::vector<double> SupportBands::endpoints() const {
  std::vector<double> e;
  for (auto& b : bands) {
    e.push_back(b.first);
    e.push_back(b.second);
  }
  return e;
}

void SupportBands::validate() const {
  if (bands.empty()) fail(ErrorCode::invalid_argument, "support needs at least one band");
  for (std::size_t j = 0; j < bands.size(); ++j) {
    if (!(bands[j].first < bands[j].second))
      fail(ErrorCode::invalid_argument, "band endpoints must be increasing");
    if (j > 0 && !(bands[j - 1].second < bands[j].first))
      fail(ErrorCode::invalid_argument, "bands must be disjoint and ordered");
  }
}

cplx sqrt_r(const SupportBands& s, cplx z, int side) {
  cplx prod = 1.0;
  const bool real = z.imag() == 0.0;
  for (double p : s.endpoints()) {
    if (real && z.real() < p) {
      if (side == 0 && s.contains_interior(z.real()))
        fail(ErrorCode::domain, "R^{1/2} on a band needs a side flag");
      // each factor picks up i*side; on gaps and left of b_0 the factors pair up
      const int sd = side == 0 ? 1 : side;
      prod *= cplx(0.0, sd * std::sqrt(p - z.real()));
    } else if (real) {
      prod *= std::sqrt(z.real() - p);
    } else {
      prod *= std::sqrt(z - p);
    }
  }
  return prod;
}

double chebyshev_sum(const std::vector<double>& coef, double t) {
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = coef.size(); k-- > 1;) {
    const double b0 = 2.0 * t * b1 - b2 + coef[k];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + (coef.empty() ? 0.0 : coef[0]);
}

cplx chebyshev_sum(const std::vector<double>& coef, cplx t) {
  cplx b1 = 0.0, b2 = 0.0;
  for (std::size_t k = coef.size(); k-- > 1;) {
    const cplx b0 = 2.0 * t * b1 - b2 + coef[k];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + (coef.empty() ? 0.0 : coef[0]);
}

EquilibriumData solve_equilibrium_one_band(const Potential& p) {
  auto issues = validate(p);
  if (!issues.empty()) fail(ErrorCode::invalid_argument, issues.front());

  const auto dv = derivative_coeffs(p.coeffs);
  const auto d2v = derivative_coeffs(dv);

  auto residual = [&](double c, double r, double F[2], double Jm[2][2]) {
    const auto v = poly_cheb(dv, c, r);
    const auto vc = poly_cheb(d2v, c, r);
    const auto vr = poly_cheb(times_t(d2v, c, r), c, r);
    F[0] = coef(v, 0);
    F[1] = r * coef(v, 1) - 4.0;
    Jm[0][0] = coef(vc, 0);
    Jm[0][1] = coef(vr, 0);
    Jm[1][0] = r * coef(vc, 1);
    Jm[1][1] = coef(v, 1) + r * coef(vr, 1);
  };

  // scan the half width with the center at 0 for a sign change of r v_1 - 4
  double c = 0.0, r = 1e-3;
  {
    double F[2], Jm[2][2];
    residual(c, r, F, Jm);
    int guard = 0;
    while (F[1] < 0.0 && guard++ < 200) {
      r *= 1.5;
      residual(c, r, F, Jm);
    }
    if (F[1] < 0.0) fail(ErrorCode::no_convergence, "no band width balances the total mass");
  }

  int it = 0;
  bool converged = false;
  for (; it < 100; ++it) {
    double F[2], Jm[2][2];
    residual(c, r, F, Jm);
    const double det = Jm[0][0] * Jm[1][1] - Jm[0][1] * Jm[1][0];
    if (det == 0.0 || !std::isfinite(det)) break;
    double dc = (F[0] * Jm[1][1] - F[1] * Jm[0][1]) / det;
    double dr = (Jm[0][0] * F[1] - Jm[1][0] * F[0]) / det;
    // damp so the half width stays positive
    double lam = 1.0;
    while (r - lam * dr <= 0.0) lam *= 0.5;
    c -= lam * dc;
    r -= lam * dr;
    if (std::fabs(dc) + std::fabs(dr) < 1e-15 * (1.0 + std::fabs(c) + r)) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    double F[2], Jm[2][2];
    residual(c, r, F, Jm);
    if (std::fabs(F[0]) + std::fabs(F[1]) > 1e-12)
      fail(ErrorCode::no_convergence, "Newton iteration for the band endpoints did not converge");
  }

  EquilibriumData eq;
  eq.potential = p;
  eq.c = c;
  eq.r = r;
  eq.newton_iterations = it + 1;
  eq.support.bands = {{c - r, c + r}};
  eq.vcheb = poly_cheb(dv, c, r);

  // h(t) = (1/r) sum_{k>=1} v_k U_{k-1}(t), refit in the T basis
  const auto& v = eq.vcheb;
  auto hfun = [&](double t) {
    double um1 = 0.0, u = 1.0, s = 0.0;  // U_{k-2}, U_{k-1}
    for (std::size_t k = 1; k < v.size(); ++k) {
      s += v[k] * u;
      const double next = 2.0 * t * u - um1;
      um1 = u;
      u = next;
    }
    return s / r;
  };
  eq.h_cheb = chebyshev_fit(hfun, static_cast<int>(v.size()) + 1);

  // the density convention psi >= 0 fixes the sign of h
  if (chebyshev_sum(eq.h_cheb, -c / r) < 0.0)
    for (auto& x : eq.h_cheb) x = -x;
  double hmin = std::numeric_limits<double>::infinity(), hmax = 0.0;
  for (int j = 0; j <= 2000; ++j) {
    const double hv = chebyshev_sum(eq.h_cheb, std::cos(kPi * j / 2000.0));
    hmin = std::min(hmin, hv);
    hmax = std::max(hmax, std::fabs(hv));
  }
  if (hmin <= 1e-10 * hmax)
    fail(ErrorCode::singular,
         "h vanishes or changes sign on the band: psi < 0 somewhere (multi-band or singular V)");

  if (!(eq.b() < 0.0 && eq.a() > 0.0))
    fail(ErrorCode::domain, "0 lies outside the support");
  eq.psi0 = eval_density(eq, 0.0);
  if (eq.psi0 <= 1e-8) fail(ErrorCode::singular, "psi(0) vanishes: multicritical at the origin");

  // the multiplier from the variational equality at the band center
  eq.ell = 2.0 * log_potential(eq, c) - p(c);
  eq.delta = 0.25 * std::min(-eq.b(), eq.a());
  return eq;
}

cplx eval_h(const EquilibriumData& eq, cplx z) {
  return chebyshev_sum(eq.h_cheb, (z - eq.c) / eq.r);
}

double eval_density(const EquilibriumData& eq, double x) {
  const double t = t_of(eq, x);
  if (!(t > -1.0 && t < 1.0)) return 0.0;
  return eq.r * std::sqrt(1.0 - t * t) * chebyshev_sum(eq.h_cheb, t) / (2.0 * kPi);
}

double eval_cdf(const EquilibriumData& eq, double x) {
  const double t = t_of(eq, x);
  if (t <= -1.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double th = std::acos(t);
  auto S = [](int m, double a) { return m == 0 ? a : std::sin(m * a) / m; };
  double s = 0.0;
  for (std::size_t k = 1; k < eq.vcheb.size(); ++k) {
    const int kk = static_cast<int>(k);
    const double at_pi = (kk == 1) ? 0.5 * kPi : 0.0;
    const double at_th = 0.5 * (S(kk - 1, th) - S(kk + 1, th));
    s += eq.vcheb[k] * (at_pi - at_th);
  }
  return eq.r * s / (2.0 * kPi);
}

cplx eval_g(const EquilibriumData& eq, cplx z, int side) {
  const cplx t = (z - eq.c) / eq.r;
  cplx w, logw;
  joukowski_inverse(t, side, w, logw);
  const int kmax = static_cast<int>(eq.vcheb.size()) - 1;
  std::vector<cplx> L(kmax + 2);
  for (int j = 0; j <= kmax + 1; ++j) L[j] = cheb_log_moment(j, w, logw);
  cplx g = std::log(eq.r);
  for (int k = 1; k <= kmax; ++k) {
    const double beta = eq.r * eq.vcheb[k] / (2.0 * kPi);
    g += 0.5 * beta * (L[k - 1] - L[k + 1]);
  }
  return g;
}

double log_potential(const EquilibriumData& eq, double x) {
  return eval_g(eq, cplx(x, 0.0), x < eq.a() ? 1 : 0).real();
}

cplx eval_phi(const EquilibriumData& eq, cplx z, int side) {
  const double a = eq.a(), b = eq.b();
  if (z == cplx(a, 0.0)) return 0.0;
  if (z.imag() == 0.0 && z.real() < a && side == 0)
    fail(ErrorCode::domain, "phi on the real axis left of a needs a side flag");
  if (z.imag() == 0.0 && (z.real() == b))
    fail(ErrorCode::domain, "phi path would end on a band endpoint");
  // s = a + (z - a) u^2 absorbs the square root at a
  const cplx dz = z - a;
  std::vector<double> cuts = {0.0, 1.0};
  if (z.real() < b) {
    const double us = std::sqrt((b - a) / (z.real() - a));
    if (us > 0.0 && us < 1.0) cuts.insert(cuts.begin() + 1, us);
  }
  constexpr int kPanels = 8, kNodes = 20;
  cplx acc = 0.0;
  for (std::size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
    for (int pnl = 0; pnl < kPanels; ++pnl) {
      const double lo = cuts[seg] + (cuts[seg + 1] - cuts[seg]) * pnl / kPanels;
      const double hi = cuts[seg] + (cuts[seg + 1] - cuts[seg]) * (pnl + 1) / kPanels;
      const Rule rule = legendre_on(lo, hi, kNodes);
      for (int i = 0; i < kNodes; ++i) {
        const double u = rule.x[i];
        const cplx s = z.imag() == 0.0 ? cplx(a + dz.real() * u * u, 0.0) : a + dz * u * u;
        acc += rule.w[i] * sqrt_r(eq.support, s, side) * eval_h(eq, s) * 2.0 * u;
      }
    }
  }
  return -0.5 * dz * acc;
}

cplx phi_plus_at_zero(const EquilibriumData& eq) {
  return cplx(0.0, kPi * (1.0 - eval_cdf(eq, 0.0)));
}

cplx conformal_map_f(const EquilibriumData& eq, cplx z, double delta) {
  const double d = delta > 0.0 ? delta : eq.delta;
  if (std::abs(z) > d * (1.0 + 1e-12)) fail(ErrorCode::domain, "z outside the local disk");
  if (z == cplx(0.0)) return 0.0;
  const double a = eq.a(), b = eq.b();
  const Rule& rule = gauss_legendre(32);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const cplx s = 0.5 * (rule.x[i] + 1.0) * z;
    acc += rule.w[i] * std::sqrt((a - s) * (s - b)) * eval_h(eq, s);
  }
  return 0.25 * z * acc;
}

VariationalReport check_variational(const EquilibriumData& eq,
                                    const std::vector<double>& grid_inside,
                                    const std::vector<double>& grid_outside, double tol) {
  VariationalReport rep;
  for (double x : grid_inside) {
    const double res = 2.0 * log_potential(eq, x) - eq.potential(x) - eq.ell;
    rep.max_inside_residual = std::max(rep.max_inside_residual, std::fabs(res));
  }
  rep.min_outside_margin = std::numeric_limits<double>::infinity();
  for (double x : grid_outside) {
    const double m = eq.ell + eq.potential(x) - 2.0 * log_potential(eq, x);
    rep.min_outside_margin = std::min(rep.min_outside_margin, m);
  }
  rep.h_min_on_band = std::numeric_limits<double>::infinity();
  for (int j = 0; j <= 2000; ++j)
    rep.h_min_on_band =
        std::min(rep.h_min_on_band, chebyshev_sum(eq.h_cheb, std::cos(kPi * j / 2000.0)));
  if (!grid_outside.empty() && rep.min_outside_margin <= tol) {
    rep.singular = true;
    rep.notes.push_back("variational inequality margin below tolerance off the support");
  }
  if (rep.h_min_on_band <= 0.0) {
    rep.singular = true;
    rep.notes.push_back("h has a zero on the closed band");
  }
  return rep;
}

}  // namespace rmt
