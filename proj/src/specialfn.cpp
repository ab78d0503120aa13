#include "rmt/specialfn.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace rmt {

namespace {

constexpr double kEps = 1e-17;
const cplx I(0.0, 1.0);

// Taylor coefficients of 1/Gamma(1+x) (Abramowitz & Stegun 6.1.34, shifted).
constexpr std::array<double, 25> kRGammaTaylor = {
    1.0,
    0.5772156649015329,
    -0.6558780715202538,
    -0.0420026350340952,
    0.1665386113822915,
    -0.0421977345555443,
    -0.0096219715278770,
    0.0072189432466630,
    -0.0011651675918591,
    -0.0002152416741149,
    0.0001280502823882,
    -0.0000201348547807,
    -0.0000012504934821,
    0.0000011330272320,
    -0.0000002056338417,
    0.0000000061160950,
    0.0000000050020075,
    -0.0000000011812746,
    0.0000000001043427,
    0.0000000000077823,
    -0.0000000000036968,
    0.0000000000005100,
    -0.0000000000000206,
    -0.0000000000000054,
    0.0000000000000014};

// Temme's auxiliary functions for |mu| <= 1/2.
void temme_gammas(double mu, double& gam1, double& gam2, double& gampl, double& gammi) {
  gampl = rgamma(1.0 + mu);
  gammi = rgamma(1.0 - mu);
  if (std::fabs(mu) > 0.1) {
    gam1 = (gammi - gampl) / (2.0 * mu);
    gam2 = 0.5 * (gammi + gampl);
    return;
  }
  gam1 = 0.0;
  gam2 = 0.0;
  double pw = 1.0;  // mu^(j-1) for odd j, mu^j for even j
  for (std::size_t j = 0; j < kRGammaTaylor.size(); ++j) {
    if (j % 2 == 0) {
      gam2 += kRGammaTaylor[j] * pw;
    } else {
      gam1 -= kRGammaTaylor[j] * pw;
      pw *= mu * mu;
    }
  }
}

// Both K_mu and K_{mu+1}, |mu| <= 1/2, Re w >= 0.
void bessel_k_pair(double mu, cplx w, cplx& kmu, cplx& kmu1) {
  if (std::abs(w) < 2.0) {
    double gam1, gam2, gampl, gammi;
    temme_gammas(mu, gam1, gam2, gampl, gammi);
    const cplx x2 = 0.5 * w;
    const double pimu = kPi * mu;
    const double fact = std::fabs(pimu) < 1e-15 ? 1.0 : pimu / std::sin(pimu);
    cplx d = -std::log(x2);
    cplx e = mu * d;
    const cplx fact2 = std::abs(e) < 1e-15 ? cplx(1.0) : std::sinh(e) / e;
    cplx ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
    cplx sum = ff;
    e = std::exp(e);
    cplx p = 0.5 * e / gampl;
    cplx q = 0.5 / (e * gammi);
    cplx c = 1.0;
    d = x2 * x2;
    cplx sum1 = p;
    for (int i = 1; i < 500; ++i) {
      const double di = i;
      ff = (di * ff + p + q) / (di * di - mu * mu);
      c *= d / di;
      p /= (di - mu);
      q /= (di + mu);
      const cplx del = c * ff;
      sum += del;
      sum1 += c * (p - di * ff);
      if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    kmu = sum;
    kmu1 = sum1 * (2.0 / w);
    return;
  }
  // Steed's continued fraction CF2 (Temme's normalisation).
  cplx b = 2.0 * (1.0 + w);
  cplx d = 1.0 / b;
  cplx h = d, delh = d;
  cplx q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25 - mu * mu;
  cplx q = a1, c = a1;
  double a = -a1;
  cplx s = 1.0 + q * delh;
  int i = 2;
  for (; i < 100000; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / static_cast<double>(i);
    const cplx qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const cplx dels = q * delh;
    s += dels;
    if (std::abs(dels) < std::abs(s) * kEps) break;
  }
  if (i >= 100000) fail(ErrorCode::no_convergence, "K_nu continued fraction did not converge");
  h = a1 * h;
  kmu = std::sqrt(kPi / (2.0 * w)) * std::exp(-w) / s;
  kmu1 = kmu * (mu + w + 0.5 - h) / w;
}

// e^w Gamma(a, w) / w^a by Legendre's continued fraction (modified Lentz).
cplx incgamma_cf(double a, cplx w) {
  constexpr double tiny = 1e-300;
  cplx b = w + 1.0 - a;
  cplx c = 1.0 / tiny;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 1; i < 20000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    const cplx del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) return h;
  }
  fail(ErrorCode::no_convergence, "incomplete gamma continued fraction did not converge");
}

// Terminant G_p(w) = e^w Gamma(p) Gamma(1-p, w) / (2 pi), for |arg w| < pi.
// argw is passed explicitly so the branch is never taken from a wrapped angle.
cplx terminant(int p, cplx w, double argw) {
  const cplx logw(std::log(std::abs(w)), argw);
  const cplx pref = std::exp(std::lgamma(static_cast<double>(p)) + (1.0 - p) * logw);
  return pref * incgamma_cf(1.0 - p, w) / (2.0 * kPi);
}

// Hankel expansion for H^(kind) at z, where argz is a determination of arg z
// inside the direct validity sector of that kind.
cplx hankel_direct(int kind, double nu, cplx z, double argz) {
  const double sgn = kind == 1 ? 1.0 : -1.0;
  const cplx iz = sgn * I / z;  // (+-i)/z
  const double mu4 = 4.0 * nu * nu;
  const double az = std::abs(z);
  const int ell = static_cast<int>(std::floor(2.0 * az));
  constexpr int kTermCount = 6;
  std::array<cplx, kTermCount> low{};  // (+-i)^k a_k / z^k for k < kTermCount
  cplx term = 1.0, sum = 1.0;
  low[0] = 1.0;
  bool exhausted = false;
  for (int k = 1; k < ell; ++k) {
    term *= (mu4 - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k) * iz;
    if (k < kTermCount) low[k] = term;
    sum += term;
    if (std::abs(term) < kEps * std::abs(sum)) {
      exhausted = true;
      break;
    }
  }
  const double cnu = std::cos(nu * kPi);
  const double argw = argz - sgn * 0.5 * kPi;  // arg(-+ 2iz)
  if (!exhausted && std::fabs(cnu) > 0.0 && ell > kTermCount && az < 60.0 &&
      std::fabs(argw) <= 0.875 * kPi) {
    const cplx w = -sgn * 2.0 * I * z;
    cplx corr = 0.0;
    for (int k = 0; k < kTermCount; ++k) corr += low[k] * terminant(ell - k, w, argw);
    sum += ((ell % 2) ? -2.0 : 2.0) * cnu * corr;
  }
  const cplx omega = z - 0.5 * nu * kPi - 0.25 * kPi;
  return std::sqrt(2.0 / (kPi * z)) * std::exp(sgn * I * omega) * sum;
}

cplx sanitize(cplx z) {
  // treat a negative zero imaginary part as the upper side
  if (z.imag() == 0.0) return cplx(z.real(), 0.0);
  return z;
}

void hankel_pair(double nu, cplx z, cplx& h1, cplx& h2) {
  z = sanitize(z);
  if (z == cplx(0.0)) fail(ErrorCode::domain, "Hankel functions are singular at z = 0");
  if (std::abs(z) > kSeriesRadius) {
    h1 = detail::hankel_asymptotic(1, nu, z);
    h2 = detail::hankel_asymptotic(2, nu, z);
  } else {
    const cplx j = detail::bessel_j_series(nu, z);
    if (z.imag() >= 0.0) {
      h1 = 2.0 / (kPi * I) * std::exp(-0.5 * I * nu * kPi) * detail::bessel_k(nu, -I * z);
      h2 = 2.0 * j - h1;
    } else {
      h2 = -2.0 / (kPi * I) * std::exp(0.5 * I * nu * kPi) * detail::bessel_k(nu, I * z);
      h1 = 2.0 * j - h2;
    }
  }
  if (z.imag() == 0.0 && z.real() > 0.0) h2 = std::conj(h1);
}

}  // namespace

double gamma_fn(double x) { return std::tgamma(x); }

double rgamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  return 1.0 / std::tgamma(x);
}

namespace detail {

cplx bessel_j_series(double nu, cplx z) {
  if (nu <= -1.0) fail(ErrorCode::invalid_argument, "Bessel order must exceed -1");
  z = sanitize(z);
  if (z == cplx(0.0)) {
    if (nu == 0.0) return 1.0;
    if (nu > 0.0) return 0.0;
    fail(ErrorCode::domain, "J_nu(0) is infinite for negative order");
  }
  const cplx q = -0.25 * z * z;
  cplx term = rgamma(nu + 1.0), sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= q / (k * (nu + k));
    sum += term;
    if (std::abs(term) < kEps * std::abs(sum) && k > std::abs(z)) break;
  }
  return std::exp(nu * std::log(0.5 * z)) * sum;
}

cplx hankel_asymptotic(int kind, double nu, cplx z) {
  z = sanitize(z);
  const double th = std::arg(z);
  if (kind == 1) {
    if (th >= -0.5 * kPi) return hankel_direct(1, nu, z, th);
    // z = v e^{-i pi}, DLMF 10.11.8
    const cplx v = -z;
    const double tv = th + kPi;
    return 2.0 * std::cos(nu * kPi) * hankel_direct(1, nu, v, tv) +
           std::exp(-I * nu * kPi) * hankel_direct(2, nu, v, tv);
  }
  if (th <= 0.5 * kPi) return hankel_direct(2, nu, z, th);
  const cplx v = -z;  // z = v e^{i pi}
  const double tv = th - kPi;
  return 2.0 * std::cos(nu * kPi) * hankel_direct(2, nu, v, tv) +
         std::exp(I * nu * kPi) * hankel_direct(1, nu, v, tv);
}

cplx bessel_j_asymptotic(double nu, cplx z) {
  z = sanitize(z);
  cplx j = 0.5 * (hankel_asymptotic(1, nu, z) + hankel_asymptotic(2, nu, z));
  if (z.imag() == 0.0 && z.real() > 0.0) j = cplx(j.real(), 0.0);
  return j;
}

cplx bessel_k(double nu, cplx w) {
  nu = std::fabs(nu);
  const int nl = static_cast<int>(std::floor(nu + 0.5));
  const double mu = nu - nl;
  cplx k0, k1;
  bessel_k_pair(mu, w, k0, k1);
  for (int i = 1; i <= nl; ++i) {
    const cplx k2 = 2.0 * (mu + i) / w * k1 + k0;
    k0 = k1;
    k1 = k2;
  }
  return k0;
}

}  // namespace detail

cplx bessel_j(double nu, cplx z) {
  if (nu <= -1.0) fail(ErrorCode::invalid_argument, "Bessel order must exceed -1");
  if (std::abs(z) <= kSeriesRadius) {
    cplx j = detail::bessel_j_series(nu, z);
    if (z.imag() == 0.0 && z.real() > 0.0) j = cplx(j.real(), 0.0);
    return j;
  }
  return detail::bessel_j_asymptotic(nu, z);
}

cplx hankel_h1(double nu, cplx z) {
  cplx h1, h2;
  hankel_pair(nu, z, h1, h2);
  return h1;
}

cplx hankel_h2(double nu, cplx z) {
  cplx h1, h2;
  hankel_pair(nu, z, h1, h2);
  return h2;
}

cplx bessel_y(double nu, cplx z) {
  cplx h1, h2;
  hankel_pair(nu, z, h1, h2);
  cplx y = (h1 - h2) / (2.0 * I);
  if (z.imag() == 0.0 && z.real() > 0.0) y = cplx(y.real(), 0.0);
  return y;
}

double bessel_j(double nu, double x) { return bessel_j(nu, cplx(x, 0.0)).real(); }

double bessel_jp(double nu, double x) {
  return nu / x * bessel_j(nu, x) - bessel_j(nu + 1.0, x);
}

double bessel_j_scaled(double nu, double x) {
  const double ax = std::fabs(x);
  if (ax > 1.0) return bessel_j(nu, ax) / std::pow(ax, nu);
  // series of the entire function directly; no cancellation for small |x|
  const double q = -0.25 * x * x;
  double term = rgamma(nu + 1.0) * std::pow(2.0, -nu), sum = term;
  for (int k = 1; k < 100; ++k) {
    term *= q / (k * (nu + k));
    sum += term;
    if (std::fabs(term) < kEps * std::fabs(sum)) break;
  }
  return sum;
}

}  // namespace rmt
