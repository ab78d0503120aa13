#include "rmt/parametrix.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "rmt/specialfn.hpp"

namespace rmt {

namespace {

const cplx I(0.0, 1.0);
constexpr double kQuarter = 0.25 * kPi;

Matrix2 lower(cplx c) { return {1.0, 0.0, c, 1.0}; }
const Matrix2 kA{0.0, 1.0, -1.0, 0.0};

Matrix2 scale(const Matrix2& m, cplx s) { return {s * m.a, s * m.b, s * m.c, s * m.d}; }

// H1, H2 at r e^{i theta} for |theta| < 3 pi, continued across the negative
// axis with the standard rotation formulas.
std::pair<cplx, cplx> hankel_lifted(double nu, double r, double theta) {
  if (theta > kPi) {
    auto [h1, h2] = hankel_lifted(nu, r, theta - kPi);
    const cplx e = std::exp(I * (nu * kPi));
    return {-h2 / e, 2.0 * std::cos(nu * kPi) * h2 + e * h1};
  }
  if (theta <= -kPi) {
    auto [h1, h2] = hankel_lifted(nu, r, theta + kPi);
    const cplx e = std::exp(I * (nu * kPi));
    return {2.0 * std::cos(nu * kPi) * h1 + h2 / e, -e * h1};
  }
  const cplx z = theta == 0.0 ? cplx(r, 0.0) : std::polar(r, theta);
  return {hankel_h1(nu, z), hankel_h2(nu, z)};
}

// The sector-I formula continued to the lifted argument theta.
Matrix2 psi_sector_one_formula(double alpha, double r, double theta) {
  auto [p1, p2] = hankel_lifted(alpha + 0.5, r, theta);
  auto [m1, m2] = hankel_lifted(alpha - 0.5, r, theta);
  const cplx pre = 0.5 * std::sqrt(kPi) * std::sqrt(r) * std::exp(I * (0.5 * theta));
  const cplx e = std::exp(-I * ((alpha + 0.25) * kPi));
  return {pre * p2 * e, -I * pre * p1 / e, pre * m2 * e, -I * pre * m1 / e};
}

Matrix2 jump_power(double alpha, int ray, int power) {
  const Matrix2 j = psi_jump(alpha, ray);
  return power > 0 ? j : j.inverse();
}

// Product X_2 ... X_k (counter-clockwise) or X_1^{-1} X_8^{-1} ... X_{k+1}^{-1}.
Matrix2 route(double alpha, int k, bool ccw) {
  Matrix2 m;
  if (ccw) {
    for (int j = 2; j <= k; ++j) m = m * jump_power(alpha, j, ray_orientation(j));
  } else {
    for (int j = 1;; j = (j == 1 ? 8 : j - 1)) {
      if (j != 1 && j == k) break;
      m = m * jump_power(alpha, j, -ray_orientation(j));
      if (j == k + 1 || (k == 8 && j == 1)) break;
    }
  }
  return m;
}

Matrix2 psi_in_sector(double alpha, double r, double theta_lifted, int k) {
  const bool ccw = k <= 4;
  return psi_sector_one_formula(alpha, r, theta_lifted) * route(alpha, k, ccw);
}

double arg_2pi(cplx z) {
  double t = std::arg(z);
  if (t < 0.0) t += 2.0 * kPi;
  return t;
}

cplx principal_pow(cplx z, double p) {
  if (p == 0.0) return 1.0;
  return std::exp(p * std::log(z));
}

}  // namespace

Matrix2 Matrix2::inverse() const {
  const cplx dt = det();
  return {d / dt, -b / dt, -c / dt, a / dt};
}

double Matrix2::max_abs() const {
  return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
}

Matrix2 Matrix2::operator*(const Matrix2& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

Matrix2 Matrix2::operator-(const Matrix2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }

int sector_of(cplx zeta) {
  if (zeta == cplx(0.0)) fail(ErrorCode::domain, "zeta = 0 has no sector");
  const int k = static_cast<int>(std::floor(arg_2pi(zeta) / kQuarter)) + 1;
  return std::clamp(k, 1, 8);
}

cplx eval_omega(double alpha, cplx z) {
  if (z.real() == 0.0) fail(ErrorCode::domain, "omega is undefined on the imaginary axis");
  return z.real() > 0.0 ? principal_pow(z, 2.0 * alpha) : principal_pow(-z, 2.0 * alpha);
}

cplx eval_W(double alpha, cplx fz, cplx z) {
  const double t = std::fabs(std::arg(fz));
  if (fz == cplx(0.0) || t == 0.0 || t == 0.5 * kPi || t == kPi)
    fail(ErrorCode::domain, "W evaluated on a branch boundary");
  return t > 0.5 * kPi ? principal_pow(z, alpha) : principal_pow(-z, alpha);
}

Matrix2 psi_jump(double alpha, int ray) {
  switch ((ray - 1) % 4 + 1) {
    case 1: return kA;
    case 2: return lower(std::exp(-2.0 * kPi * I * alpha));
    case 3: return Matrix2::diag(std::exp(kPi * I * alpha), std::exp(-kPi * I * alpha));
    default: return lower(std::exp(2.0 * kPi * I * alpha));
  }
}

int ray_orientation(int ray) {
  static const int s[8] = {1, 1, 1, -1, -1, -1, 1, 1};
  if (ray < 1 || ray > 8) fail(ErrorCode::invalid_argument, "ray index must be 1..8");
  return s[ray - 1];
}

Matrix2 psi_model(double alpha, cplx zeta) {
  const int k = sector_of(zeta);
  double th = std::arg(zeta);
  if (k <= 4) {
    if (th < 0.0) th += 2.0 * kPi;
  } else if (th > 0.0) {
    th -= 2.0 * kPi;
  }
  return psi_in_sector(alpha, std::abs(zeta), th, k);
}

Matrix2 psi_model_boundary(double alpha, double r, int ray, int side) {
  if (side != 1 && side != -1) fail(ErrorCode::invalid_argument, "side must be +1 or -1");
  const int ccw_sector = ray;
  const int cw_sector = ray == 1 ? 8 : ray - 1;
  const bool plus_is_ccw = ray_orientation(ray) > 0;
  const int k = (side > 0) == plus_is_ccw ? ccw_sector : cw_sector;
  double th = k == ray ? (ray - 1) * kQuarter : k * kQuarter;
  if (k >= 5) th -= 2.0 * kPi;
  return psi_in_sector(alpha, r, th, k);
}

double psi_jump_residual(double alpha, double r, int ray) {
  const Matrix2 p = psi_model_boundary(alpha, r, ray, 1);
  const Matrix2 m = psi_model_boundary(alpha, r, ray, -1);
  return (p - m * psi_jump(alpha, ray)).max_abs() / std::max(1.0, p.max_abs());
}

double psi_cyclic_residual(double alpha, cplx zeta) {
  const int k = sector_of(zeta);
  const double th = arg_2pi(zeta);
  const double r = std::abs(zeta);
  const Matrix2 ccw = psi_sector_one_formula(alpha, r, th) * route(alpha, k, true);
  Matrix2 cw_route;
  for (int j = 1;; j = (j == 1 ? 8 : j - 1)) {
    cw_route = cw_route * jump_power(alpha, j, -ray_orientation(j));
    if (j == (k % 8) + 1) break;
  }
  const Matrix2 cw = psi_sector_one_formula(alpha, r, th - 2.0 * kPi) * cw_route;
  return (ccw - cw).max_abs() / std::max(1.0, ccw.max_abs());
}

Matrix2 outer_parametrix(const EquilibriumData& eq, const SzegoData& sd, cplx z, int side) {
  if (sd.gaps() > 0 || eq.support.gaps() > 0)
    fail(ErrorCode::unsupported,
         "outer parametrix with gaps needs the Riemann theta construction, which is not implemented");
  const double a = eq.a(), b = eq.b();
  if (std::fabs(sd.support.left() - b) > 1e-10 * (1.0 + std::fabs(b)) ||
      std::fabs(sd.support.right() - a) > 1e-10 * (1.0 + std::fabs(a)))
    fail(ErrorCode::invalid_argument, "Szego data and equilibrium support differ");
  const bool on_band = z.imag() == 0.0 && z.real() > b && z.real() < a;
  if (on_band && side == 0) fail(ErrorCode::domain, "outer parametrix on the band needs a side flag");
  cplx g;
  if (on_band) {
    const double x = z.real();
    g = std::pow((a - x) / (x - b), 0.25) * std::exp(I * (side * kQuarter));
  } else {
    g = std::pow((z - a) / (z - b), 0.25);
  }
  const cplx gi = 1.0 / g;
  const Matrix2 mt{0.5 * (g + gi), (g - gi) / (2.0 * I), -(g - gi) / (2.0 * I), 0.5 * (g + gi)};
  const cplx D = eval_D(sd, z, on_band ? side : 0);
  const cplx Dinf = sd.d_infinity;
  return Matrix2::diag(Dinf, 1.0 / Dinf) * mt * Matrix2::diag(1.0 / D, D);
}

Matrix2 local_E(const EquilibriumData& eq, const SzegoData& sd, cplx z, double delta) {
  if (z.imag() == 0.0) fail(ErrorCode::domain, "E is evaluated off the real axis");
  const double alpha = sd.alpha;
  const cplx fz = conformal_map_f(eq, z, delta);
  const int k = sector_of(fz);
  const cplx W = eval_W(alpha, fz, z);
  const cplx e = std::exp(I * (0.5 * alpha * kPi));
  Matrix2 m = outer_parametrix(eq, sd, z) * Matrix2::diag(W, 1.0 / W);
  if (k >= 5) m = m * kA;
  const bool plus = k <= 2 || k >= 7;
  return m * (plus ? Matrix2::diag(e, 1.0 / e) : Matrix2::diag(1.0 / e, e));
}

Matrix2 local_parametrix(const EquilibriumData& eq, const SzegoData& sd, const EnsembleParams& e,
                         cplx z, double delta) {
  if (z == cplx(0.0)) fail(ErrorCode::domain, "local parametrix is singular at 0");
  if (z.imag() == 0.0) fail(ErrorCode::domain, "z lies on a jump contour");
  const double alpha = sd.alpha;
  if (alpha != e.alpha) fail(ErrorCode::invalid_argument, "alpha differs from the Szego data");
  const double d = delta > 0.0 ? delta : eq.delta;
  const double n = e.n;
  const cplx fz = conformal_map_f(eq, z, d);
  const double t = arg_2pi(fz) / kQuarter;
  if (t == std::floor(t)) fail(ErrorCode::domain, "n f(z) lies on a ray of the model problem");
  const cplx p0 = phi_plus_at_zero(eq);
  // phi from f, so the exponentials pair exactly with the Hankel asymptotics
  const cplx phi = z.imag() > 0.0 ? p0 - I * fz : I * fz - p0;
  const cplx W = eval_W(alpha, fz, z);
  const Matrix2 En = local_E(eq, sd, z, d) * Matrix2::diag(std::exp(n * p0), std::exp(-n * p0)) *
                     Matrix2::diag(std::exp(-I * kQuarter), std::exp(I * kQuarter)) *
                     scale(Matrix2{1.0, I, I, 1.0}, 1.0 / std::sqrt(2.0));
  const Matrix2 psi = psi_model(alpha, n * fz);
  return En * psi * Matrix2::diag(std::exp(-n * phi) / W, W * std::exp(n * phi));
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) fail(ErrorCode::invalid_argument, "slope needs two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

MatchingReport check_matching(const EquilibriumData& eq, const SzegoData& sd, double alpha,
                              const std::vector<int>& ns, double delta, int points, double exclusion) {
  MatchingReport rep;
  rep.delta = delta > 0.0 ? delta : eq.delta;
  rep.ns = ns;
  std::vector<cplx> zs;
  for (int i = 0; i < points; ++i) {
    const double t = 2.0 * kPi * (i + 0.5) / points;
    const cplx z = std::polar(rep.delta, t);
    const double af = arg_2pi(conformal_map_f(eq, z, rep.delta)) / kQuarter;
    const double dist = std::fabs(af - std::round(af)) * kQuarter;
    if (dist < exclusion) continue;
    zs.push_back(z);
    rep.angles.push_back(t);
  }
  std::vector<Matrix2> pinf_inv;
  for (cplx z : zs) pinf_inv.push_back(outer_parametrix(eq, sd, z).inverse());
  std::vector<double> xs;
  for (int n : ns) {
    const EnsembleParams e{alpha, n};
    std::vector<double> res;
    double worst = 0.0;
    for (std::size_t i = 0; i < zs.size(); ++i) {
      const Matrix2 q = local_parametrix(eq, sd, e, zs[i], rep.delta) * pinf_inv[i];
      const double r = (q - Matrix2::identity()).max_abs();
      res.push_back(r);
      worst = std::max(worst, r);
    }
    rep.point_residual.push_back(res);
    rep.max_residual.push_back(worst);
    xs.push_back(n);
  }
  if (ns.size() >= 2) rep.slope = loglog_slope(xs, rep.max_residual);
  return rep;
}

}  // namespace rmt
