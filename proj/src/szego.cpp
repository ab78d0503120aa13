#include "rmt/szego.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <utility>

#include "rmt/quadrature.hpp"

namespace rmt {

namespace {

const cplx I(0.0, 1.0);
constexpr int kNodes = 20;
constexpr double kLogFinest = 1e-13;  // well above the ulp of theta near pi

using Panels = std::vector<std::pair<double, double>>;

void grade_toward(double focus, double other, double finest, Panels& out) {
  const double len = other - focus;  // signed
  double w = 1.0;
  while (std::fabs(len) * w * 0.5 > finest) {
    const double p = focus + len * w * 0.5, q = focus + len * w;
    out.emplace_back(std::min(p, q), std::max(p, q));
    w *= 0.5;
  }
  const double q = focus + len * w;
  out.emplace_back(std::min(focus, q), std::max(focus, q));
}

// Panels on [lo, hi], refined geometrically toward every focus; each focus
// carries its own finest panel width.
Panels graded_panels(double lo, double hi, std::vector<std::pair<double, double>> foci) {
  std::vector<std::pair<double, double>> pts;  // (position, finest) ; finest < 0 = plain break
  pts.emplace_back(lo, -1.0);
  pts.emplace_back(hi, -1.0);
  for (auto [f, fin] : foci)
    if (f >= lo && f <= hi) pts.emplace_back(f, fin);
  std::sort(pts.begin(), pts.end());
  // merge coincident breakpoints, keeping the finest requirement
  std::vector<std::pair<double, double>> bp;
  for (auto& p : pts) {
    if (!bp.empty() && p.first - bp.back().first < 1e-300) {
      if (p.second > 0 && (bp.back().second < 0 || p.second < bp.back().second))
        bp.back().second = p.second;
    } else {
      bp.push_back(p);
    }
  }
  Panels out;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double u = bp[i].first, w = bp[i + 1].first;
    const bool fu = bp[i].second > 0, fw = bp[i + 1].second > 0;
    if (w <= u) continue;
    if (fu && fw) {
      const double m = 0.5 * (u + w);
      grade_toward(u, m, bp[i].second, out);
      grade_toward(w, m, bp[i + 1].second, out);
    } else if (fu) {
      grade_toward(u, w, bp[i].second, out);
    } else if (fw) {
      grade_toward(w, u, bp[i + 1].second, out);
    } else {
      out.emplace_back(u, w);
    }
  }
  return out;
}

template <class F>
auto integrate_panels(const Panels& panels, F&& f) -> decltype(f(0.0)) {
  const Rule& r = gauss_legendre(kNodes);
  decltype(f(0.0)) acc{};
  for (auto [u, w] : panels) {
    const double c = 0.5 * (u + w), h = 0.5 * (w - u);
    decltype(f(0.0)) s{};
    for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(c + h * r.x[i]);
    acc += h * s;
  }
  return acc;
}

// A band or gap [ends[i], ends[i+1]] with R^{1/2} factored as
// R_+^{1/2}(x) = i^m sqrt((x - lo)(hi - x)) Q(x) on its interior.
struct Segment {
  const std::vector<double>* ends;
  std::size_t i;
  double lo, hi, mid, h;
  cplx phase;  // i^m, m = number of endpoints above the segment interior

  Segment(const std::vector<double>& e, std::size_t idx) : ends(&e), i(idx) {
    lo = e[i];
    hi = e[i + 1];
    mid = 0.5 * (lo + hi);
    h = 0.5 * (hi - lo);
    const std::size_t m = e.size() - (i + 1);
    static const cplx pw[4] = {1.0, I, -1.0, -I};
    phase = pw[m % 4];
  }
  double x(double th) const { return mid + h * std::cos(th); }
  double Q(double x) const {
    double q = 1.0;
    for (std::size_t k = 0; k < ends->size(); ++k)
      if (k != i && k != i + 1) q *= std::sqrt(std::fabs(x - (*ends)[k]));
    return q;
  }
  double theta_of(double x) const { return std::acos(std::clamp((x - mid) / h, -1.0, 1.0)); }
  // 1/R^{1/2} times the Chebyshev Jacobian, real on gaps
  double gap_density(double th) const { return 1.0 / (phase.real() * Q(x(th))); }
};

std::vector<Segment> bands_of(const std::vector<double>& e) {
  std::vector<Segment> out;
  for (std::size_t i = 0; i + 1 < e.size(); i += 2) out.emplace_back(e, i);
  return out;
}

std::vector<Segment> gaps_of(const std::vector<double>& e) {
  std::vector<Segment> out;
  for (std::size_t i = 1; i + 2 < e.size(); i += 2) out.emplace_back(e, i);
  return out;
}

void require_origin_inside(const SupportBands& s) {
  s.validate();
  if (!s.contains_interior(0.0)) fail(ErrorCode::domain, "0 must lie inside a band");
  for (double p : s.endpoints())
    if (std::fabs(p) < 1e-12) fail(ErrorCode::domain, "0 is within 1e-12 of a band endpoint");
}

// log|x| on a band that contains 0 at angle th0, without cancellation
double log_abs_x(const Segment& b, double th, double th0) {
  return std::log(std::fabs(2.0 * b.h * std::sin(0.5 * (th + th0)) * std::sin(0.5 * (th - th0))));
}

// int over a gap of dx / (R^{1/2}(x) (x - z)). For z real in the gap the
// principal value is returned (the Glauert integral of the subtracted constant vanishes).
cplx gap_cauchy(const Segment& g, cplx z) {
  const double xs = std::clamp(z.real(), g.lo, g.hi);
  const double ths = g.theta_of(xs);
  const double gs = g.gap_density(ths);
  const double dist = std::abs(z - xs);
  const bool inside_real = z.imag() == 0.0 && z.real() > g.lo && z.real() < g.hi;
  std::vector<std::pair<double, double>> foci;
  if (inside_real)
    foci.emplace_back(ths, 0.05);
  else if (dist < 2.0 * g.h)
    foci.emplace_back(ths, std::max(1e-15, 0.25 * dist / g.h));
  const Panels pan = graded_panels(0.0, kPi, foci);
  const cplx body = integrate_panels(pan, [&](double th) -> cplx {
    const double x = g.x(th);
    return (g.gap_density(th) - gs) / (x - z);
  });
  if (inside_real) return body;
  const cplx closed = -kPi / (std::sqrt(z - g.lo) * std::sqrt(z - g.hi));
  return body + gs * closed;
}

// int_{-inf}^{b_0} dx / (R^{1/2}(x) (x - z)) with x = b_0 - L tan^2(phi).
cplx ray_cauchy(const std::vector<double>& e, cplx z) {
  const double b0 = e.front();
  const double L = e.back() - e.front();
  const int nb = static_cast<int>(e.size()) / 2;  // N + 1
  const double sgn = (nb % 2 == 0) ? 1.0 : -1.0;  // (-1)^{N+1}
  std::vector<std::pair<double, double>> foci;
  if (z.real() < b0 && std::fabs(z.imag()) < L) {
    const double ph = std::atan(std::sqrt((b0 - z.real()) / L));
    foci.emplace_back(ph, std::max(1e-15, 0.25 * std::fabs(z.imag()) / L));
  } else {
    // the integrand turns over where L tan^2(phi) ~ |z - b_0|
    const double ph = std::atan(std::sqrt(std::abs(z - b0) / L));
    foci.emplace_back(ph, 0.25 * std::min(ph, 0.5 * kPi - ph));
  }
  const Panels pan = graded_panels(0.0, 0.5 * kPi, foci);
  return integrate_panels(pan, [&](double ph) -> cplx {
    const double c = std::cos(ph), s = std::sin(ph);
    double q = 1.0;
    for (std::size_t k = 1; k < e.size(); ++k) q *= std::sqrt((e[k] - b0) * c * c + L * s * s);
    const double cp = std::pow(c, 2 * nb - 1);
    return 2.0 * std::sqrt(L) * cp / (sgn * q * ((b0 - z) * c * c - L * s * s));
  });
}

double gap_coefficient(const SzegoData& sd, std::size_t j, const Segment& g) {
  return sd.xi[j] - (g.hi <= 0.0 ? sd.alpha : 0.0);
}

int locate(const std::vector<double>& e, double x) {
  // index of the segment [e[k], e[k+1]] whose interior holds x, or -1
  for (std::size_t k = 0; k + 1 < e.size(); ++k)
    if (x > e[k] && x < e[k + 1]) return static_cast<int>(k);
  return -1;
}

}  // namespace

MomentResult band_gap_moments(const SupportBands& s, double alpha, int k) {
  require_origin_inside(s);
  if (k < 0 || k > s.gaps()) fail(ErrorCode::invalid_argument, "moment index out of range");
  const auto e = s.endpoints();
  MomentResult res;
  res.band = 0.0;
  if (alpha != 0.0) {
    for (const Segment& b : bands_of(e)) {
      const bool has0 = b.lo < 0.0 && b.hi > 0.0;
      const double th0 = has0 ? b.theta_of(0.0) : 0.0;
      std::vector<std::pair<double, double>> foci;
      if (has0) foci.emplace_back(th0, kLogFinest);
      const Panels pan = graded_panels(0.0, kPi, foci);
      const double acc = integrate_panels(pan, [&](double th) {
        const double x = b.x(th);
        const double lg = has0 ? log_abs_x(b, th, th0) : std::log(std::fabs(x));
        return 2.0 * alpha * lg * std::pow(x, k) / b.Q(x);
      });
      res.band += acc / (2.0 * kPi * I * b.phase);
    }
  }
  for (const Segment& g : gaps_of(e)) {
    const Panels pan = graded_panels(0.0, kPi, {{0.25 * kPi, -1}, {0.5 * kPi, -1}, {0.75 * kPi, -1}});
    res.gaps.push_back(integrate_panels(pan, [&](double th) {
      return std::pow(g.x(th), k) * g.gap_density(th);
    }));
  }
  return res;
}

SzegoData solve_xi(const SupportBands& s, double alpha) {
  if (!(alpha > -0.5)) fail(ErrorCode::invalid_argument, "alpha must exceed -1/2");
  require_origin_inside(s);
  SzegoData sd;
  sd.support = s;
  sd.alpha = alpha;
  const int N = s.gaps();
  sd.a_matrix.assign(static_cast<std::size_t>(N) * N, 0.0);
  sd.rhs.assign(N, 0.0);
  for (int k = 0; k < N; ++k) {
    const MomentResult m = band_gap_moments(s, alpha, k);
    sd.rhs[k] = m.band.real();
    for (int j = 0; j < N; ++j) sd.a_matrix[k * N + j] = m.gaps[j];
  }
  sd.xi.assign(N, 0.0);
  if (N > 0) {
    Eigen::MatrixXd A(N, N);
    Eigen::VectorXd b(N);
    for (int k = 0; k < N; ++k) {
      b(k) = sd.rhs[k];
      for (int j = 0; j < N; ++j) A(k, j) = sd.a_matrix[k * N + j];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const auto sv = svd.singularValues();
    sd.cond_a = sv(N - 1) > 0.0 ? sv(0) / sv(N - 1) : INFINITY;
    if (!std::isfinite(sd.cond_a) || sd.cond_a > 1e13 || sv(0) == 0.0)
      fail(ErrorCode::singular, "moment matrix A is numerically singular");
    const Eigen::VectorXd x = A.fullPivLu().solve(-b);
    for (int j = 0; j < N; ++j) sd.xi[j] = x(j);
    sd.system_residual = (A * x + b).cwiseAbs().maxCoeff();
  }
  const MomentResult top = band_gap_moments(s, alpha, N);
  sd.band_moment_top = top.band.real();
  sd.gap_moments_top = top.gaps;
  double m = sd.band_moment_top;
  for (int j = 0; j < N; ++j) m += sd.xi[j] * top.gaps[j];
  sd.d_infinity = std::exp(-m);
  return sd;
}

cplx eval_phi_szego(const SzegoData& sd, cplx z, int side) {
  const auto e = sd.support.endpoints();
  const double lo = e.front(), hi = e.back();
  const bool real = z.imag() == 0.0;
  const double x = z.real();
  if (z == cplx(0.0)) fail(ErrorCode::domain, "Phi is singular at 0");
  if (real) {
    for (double p : e)
      if (x == p) fail(ErrorCode::domain, "Phi evaluated at a band endpoint");
    if (x >= lo && x <= hi && side == 0)
      fail(ErrorCode::domain, "point on the cut needs a side flag");
    if (x < lo) return eval_phi_szego_direct(sd, z);
  }
  if (sd.alpha == 0.0 && std::all_of(sd.xi.begin(), sd.xi.end(), [](double v) { return v == 0.0; }))
    return 0.0;

  const int seg = real ? locate(e, x) : -1;
  const bool on_gap = seg >= 0 && seg % 2 == 1;
  const int sigma = real ? side : 0;

  cplx S = -sd.alpha * ray_cauchy(e, z);
  const auto gaps = gaps_of(e);
  for (std::size_t j = 0; j < gaps.size(); ++j) {
    const double c = gap_coefficient(sd, j, gaps[j]);
    if (c == 0.0) continue;
    S += c * gap_cauchy(gaps[j], z);
  }
  cplx Rz;
  if (real && seg >= 0) {
    Rz = sqrt_r(sd.support, x, sigma);
    if (on_gap) {
      // Plemelj: the boundary value adds +- pi i times the density
      const std::size_t j = static_cast<std::size_t>(seg - 1) / 2;
      const double c = gap_coefficient(sd, j, gaps[j]);
      S += c * (sigma * kPi * I) / Rz;
    }
  } else {
    Rz = sqrt_r(sd.support, z, 0);
  }
  cplx lg;
  if (real && x < 0.0)
    lg = cplx(std::log(-x), sigma * kPi);
  else
    lg = std::log(z);
  return sd.alpha * lg + Rz * S;
}

cplx eval_D(const SzegoData& sd, cplx z, int side) { return std::exp(eval_phi_szego(sd, z, side)); }

cplx eval_phi_szego_direct(const SzegoData& sd, cplx z) {
  const auto e = sd.support.endpoints();
  if (z.imag() == 0.0 && z.real() >= e.front() && z.real() <= e.back())
    fail(ErrorCode::domain, "direct formula needs a point off the cut");
  cplx S = 0.0;
  if (sd.alpha != 0.0) {
    for (const Segment& b : bands_of(e)) {
      const bool has0 = b.lo < 0.0 && b.hi > 0.0;
      const double th0 = has0 ? b.theta_of(0.0) : 0.0;
      std::vector<std::pair<double, double>> foci;
      if (has0) foci.emplace_back(th0, kLogFinest);
      const double xs = std::clamp(z.real(), b.lo, b.hi);
      const double dist = std::abs(z - xs);
      if (dist < 2.0 * b.h) foci.emplace_back(b.theta_of(xs), std::max(1e-15, 0.25 * dist / b.h));
      const Panels pan = graded_panels(0.0, kPi, foci);
      const cplx acc = integrate_panels(pan, [&](double th) -> cplx {
        const double x = b.x(th);
        const double lg = has0 ? log_abs_x(b, th, th0) : std::log(std::fabs(x));
        return 2.0 * sd.alpha * lg / (b.Q(x) * (x - z));
      });
      S += acc / (2.0 * kPi * I * b.phase);
    }
  }
  const auto gaps = gaps_of(e);
  for (std::size_t j = 0; j < gaps.size(); ++j)
    if (sd.xi[j] != 0.0) S += sd.xi[j] * gap_cauchy(gaps[j], z);
  return sqrt_r(sd.support, z, 0) * S;
}

cplx d_infinity(const SzegoData& sd) { return sd.d_infinity; }

cplx d_infinity_numeric(const SzegoData& sd, double radius) {
  const cplx z1(0.0, radius), z2(0.0, 2.0 * radius);
  return std::exp(2.0 * eval_phi_szego(sd, z2) - eval_phi_szego(sd, z1));
}

std::vector<double> default_band_probes(const SupportBands& s, int per_band, double margin) {
  std::vector<double> out;
  for (auto [lo, hi] : s.bands) {
    const double len = hi - lo, m = margin * len;
    for (int i = 0; i < per_band; ++i) {
      const double x = lo + m + (len - 2.0 * m) * (i + 0.5) / per_band;
      if (std::fabs(x) > m) out.push_back(x);
    }
  }
  return out;
}

std::vector<double> default_gap_probes(const SupportBands& s, int per_gap, double margin) {
  std::vector<double> out;
  for (std::size_t j = 0; j + 1 < s.bands.size(); ++j) {
    const double lo = s.bands[j].second, hi = s.bands[j + 1].first;
    const double len = hi - lo, m = margin * len;
    for (int i = 0; i < per_gap; ++i) out.push_back(lo + m + (len - 2.0 * m) * (i + 0.5) / per_gap);
  }
  return out;
}

SzegoReport check_szego(const SzegoData& sd, const std::vector<double>& band_probes,
                        const std::vector<double>& gap_probes, int m_min, int m_max) {
  SzegoReport rep;
  rep.system_residual = sd.system_residual;
  rep.cond_a = sd.cond_a;
  const auto e = sd.support.endpoints();
  for (double x : band_probes) {
    if (!sd.support.contains_interior(x) || x == 0.0) continue;
    const cplx s = eval_phi_szego(sd, x, 1) + eval_phi_szego(sd, x, -1) - 2.0 * sd.alpha * std::log(std::fabs(x));
    rep.max_band_jump = std::max(rep.max_band_jump, std::abs(std::exp(s) - 1.0));
  }
  for (double x : gap_probes) {
    const int seg = locate(e, x);
    if (seg < 0 || seg % 2 == 0) continue;
    const double xi = sd.xi[static_cast<std::size_t>(seg - 1) / 2];
    const cplx d = eval_phi_szego(sd, x, 1) - eval_phi_szego(sd, x, -1);
    rep.max_gap_phase = std::max(rep.max_gap_phase, std::abs(std::exp(d) - std::exp(2.0 * kPi * I * xi)));
  }
  double lo_min = INFINITY, lo_max = 0.0, up_min = INFINITY, up_max = 0.0;
  for (int m = m_min; m <= m_max; ++m) {
    for (double sgn : {1.0, -1.0}) {
      const cplx z = std::ldexp(1.0, -m) * cplx(sgn, 1.0) / std::sqrt(2.0);
      const double v = std::exp((eval_phi_szego(sd, z) - sd.alpha * std::log(z)).real());
      lo_min = std::min(lo_min, v);
      lo_max = std::max(lo_max, v);
      up_min = std::min(up_min, 1.0 / v);
      up_max = std::max(up_max, 1.0 / v);
    }
  }
  rep.bound_ratio_lower = lo_max / lo_min;
  rep.bound_ratio_upper = up_max / up_min;
  rep.growth_trend = rep.bound_ratio_lower > 2.0 || rep.bound_ratio_upper > 2.0;
  rep.d_inf_closed = sd.d_infinity;
  rep.d_inf_numeric = d_infinity_numeric(sd);
  if (rep.growth_trend) rep.notes.push_back("|z^{-a} D| varies by more than a factor 2 near 0");
  return rep;
}

}  // namespace rmt
