#include "rmt/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rmt/quadrature.hpp"

namespace rmt {

namespace {

double log_weight_nz(const Potential& p, const EnsembleParams& e, double x) {
  return 2.0 * e.alpha * std::log(std::fabs(x)) - e.n * p(x);
}

// Outermost point where w_n times x^{2K+2} still matters.
double truncation_bound(const Potential& p, const EnsembleParams& e, int K, double dir,
                        double tail_log10) {
  auto crit = [&](double x) {
    return log_weight_nz(p, e, dir * x) + 2.0 * (K + 1) * std::log(x);
  };
  double peak = -std::numeric_limits<double>::infinity();
  double x = 1e-3;
  std::vector<std::pair<double, double>> scan;
  for (int i = 0; i < 20000 && x < 1e6; ++i) {
    const double v = crit(x);
    peak = std::max(peak, v);
    scan.emplace_back(x, v);
    if (v < peak - tail_log10 * std::log(10.0) - 10.0 && i > 50) break;
    x += 0.01 * (1.0 + x);
  }
  const double cutoff = peak - tail_log10 * std::log(10.0);
  double X = scan.back().first;
  for (auto it = scan.rbegin(); it != scan.rend(); ++it) {
    if (it->second > cutoff) break;
    X = it->first;
  }
  return X;
}

}  // namespace

double RecurrenceTable::mu0() const { return std::exp(log_mu0); }

WeightedQuadrature build_quadrature(const Potential& p, const EnsembleParams& e, int K,
                                    int nodes_per_panel, const QuadratureOptions& opt) {
  if (K < 1) fail(ErrorCode::invalid_argument, "degree K must be at least 1");
  auto issues = validate(p, e);
  if (!issues.empty()) fail(ErrorCode::invalid_argument, issues.front());

  WeightedQuadrature q;
  q.right = truncation_bound(p, e, K, +1.0, opt.tail_log10);
  q.left = -truncation_bound(p, e, K, -1.0, opt.tail_log10);
  const double L = 0.25 * std::min(-q.left, q.right);
  q.origin_panel = L;
  q.panel_nodes = nodes_per_panel;

  std::vector<std::pair<double, double>> pts;  // (node, log weight)
  // |x|^{2 alpha} is absorbed exactly by Gauss-Jacobi on [-L, 0] and [0, L]
  const Rule jac = gauss_jacobi_left(nodes_per_panel, 2.0 * e.alpha);
  const double logL = (2.0 * e.alpha + 1.0) * std::log(L);
  for (std::size_t i = 0; i < jac.x.size(); ++i) {
    for (double s : {-1.0, 1.0}) {
      const double x = s * L * jac.x[i];
      pts.emplace_back(x, std::log(jac.w[i]) + logL - e.n * p(x));
    }
  }
  auto add_side = [&](double lo, double hi) {
    const int np = opt.panels_per_side;
    for (int j = 0; j < np; ++j) {
      const Rule r = legendre_on(lo + (hi - lo) * j / np, lo + (hi - lo) * (j + 1) / np,
                                 nodes_per_panel);
      for (std::size_t i = 0; i < r.x.size(); ++i)
        pts.emplace_back(r.x[i], std::log(r.w[i]) + log_weight_nz(p, e, r.x[i]));
    }
  };
  add_side(L, q.right);
  add_side(q.left, -L);
  std::sort(pts.begin(), pts.end());
  for (auto& [x, lw] : pts) {
    q.nodes.push_back(x);
    q.log_weights.push_back(lw);
  }
  return q;
}

RecurrenceTable stieltjes_recurrence(const WeightedQuadrature& q, const Potential& p,
                                     const EnsembleParams& e, int K) {
  const std::size_t N = q.nodes.size();
  if (N <= static_cast<std::size_t>(K)) fail(ErrorCode::invalid_argument, "rule too small for degree");
  const double shift = *std::max_element(q.log_weights.begin(), q.log_weights.end());
  std::vector<double> W(N);
  for (std::size_t i = 0; i < N; ++i) W[i] = std::exp(q.log_weights[i] - shift);
  const double total = std::accumulate(W.begin(), W.end(), 0.0);

  RecurrenceTable t;
  t.potential = p;
  t.ensemble = e;
  t.log_mu0 = shift + std::log(total);

  // normalized discrete Stieltjes: q_k are the orthonormal values at the nodes
  std::vector<double> qm(N, 0.0), qk(N, 1.0 / std::sqrt(total)), r(N);
  double ck = 0.0;
  for (int k = 0; k < K; ++k) {
    double dk = 0.0;
    for (std::size_t i = 0; i < N; ++i) dk += W[i] * q.nodes[i] * qk[i] * qk[i];
    double nrm = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      r[i] = (q.nodes[i] - dk) * qk[i] - ck * qm[i];
      nrm += W[i] * r[i] * r[i];
    }
    // one reorthogonalization pass against q_k keeps the recursion honest
    double proj = 0.0;
    for (std::size_t i = 0; i < N; ++i) proj += W[i] * r[i] * qk[i];
    if (std::fabs(proj) > 0.0) {
      nrm = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        r[i] -= proj * qk[i];
        nrm += W[i] * r[i] * r[i];
      }
      dk += proj;
    }
    if (!(nrm > 0.0) || !std::isfinite(nrm))
      fail(ErrorCode::no_convergence,
           "loss of positivity in c_k^2: quadrature too coarse for the requested degree");
    const double cnext = std::sqrt(nrm);
    t.diag.push_back(dk);
    t.offdiag.push_back(cnext);
    for (std::size_t i = 0; i < N; ++i) {
      qm[i] = qk[i];
      qk[i] = r[i] / cnext;
    }
    ck = cnext;
  }
  return t;
}

RecurrenceTable build_recurrence(const Potential& p, const EnsembleParams& e, int K,
                                 const QuadratureOptions& opt, WeightedQuadrature* final_rule) {
  int m = opt.initial_nodes;
  WeightedQuadrature q = build_quadrature(p, e, K, m, opt);
  RecurrenceTable prev = stieltjes_recurrence(q, p, e, K);
  for (int ref = 1; ref <= opt.max_refinements; ++ref) {
    m *= 2;
    q = build_quadrature(p, e, K, m, opt);
    q.refinements = ref;
    RecurrenceTable cur = stieltjes_recurrence(q, p, e, K);
    double change = std::fabs(cur.log_mu0 - prev.log_mu0);
    for (int k = 0; k < K; ++k) {
      change = std::max(change, std::fabs(cur.diag[k] - prev.diag[k]));
      change = std::max(change, std::fabs(cur.offdiag[k] - prev.offdiag[k]));
    }
    prev = std::move(cur);
    if (change < opt.tolerance) {
      if (final_rule) *final_rule = q;
      return prev;
    }
  }
  fail(ErrorCode::no_convergence, "quadrature refinement did not converge within the cap");
}

void scaled_orthopoly(const RecurrenceTable& t, int k, double x, std::vector<double>& p,
                      std::vector<double>* dp) {
  if (k > t.degree()) fail(ErrorCode::invalid_argument, "degree exceeds the recurrence table");
  p.assign(k + 1, 0.0);
  p[0] = 1.0;
  if (dp) dp->assign(k + 1, 0.0);
  for (int j = 0; j < k; ++j) {
    const double cj = j > 0 ? t.offdiag[j - 1] : 0.0;
    const double pm = j > 0 ? p[j - 1] : 0.0;
    const double cn = t.offdiag[j];
    p[j + 1] = ((x - t.diag[j]) * p[j] - cj * pm) / cn;
    if (dp) {
      const double dpm = j > 0 ? (*dp)[j - 1] : 0.0;
      (*dp)[j + 1] = ((x - t.diag[j]) * (*dp)[j] + p[j] - cj * dpm) / cn;
    }
  }
}

double eval_orthopoly(const RecurrenceTable& t, int k, double x) {
  std::vector<double> p;
  scaled_orthopoly(t, k, x, p);
  return p[k] * std::exp(-0.5 * t.log_mu0);
}

double log_leading_coeff(const RecurrenceTable& t, int k) {
  double s = -0.5 * t.log_mu0;
  for (int j = 1; j <= k; ++j) s -= std::log(t.c(j));
  return s;
}

double leading_coeff(const RecurrenceTable& t, int k) { return std::exp(log_leading_coeff(t, k)); }

namespace {

int resolve_n(const RecurrenceTable& t, int n) {
  if (n < 0) n = t.ensemble.n;
  if (n < 1 || n > t.degree()) fail(ErrorCode::invalid_argument, "kernel degree exceeds the table");
  return n;
}

double log_w(const RecurrenceTable& t, double x) {
  if (x == 0.0 && t.ensemble.alpha < 0.0) fail(ErrorCode::domain, "kernel has a pole at 0 for alpha < 0");
  return eval_log_weight(t.potential, t.ensemble, x);
}

}  // namespace

double cd_kernel_confluent(const RecurrenceTable& t, double x, int n) {
  n = resolve_n(t, n);
  std::vector<double> p, dp;
  scaled_orthopoly(t, n, x, p, &dp);
  const double lw = log_w(t, x);
  if (std::isinf(lw)) return 0.0;
  return std::exp(lw - t.log_mu0) * t.c(n) * (dp[n] * p[n - 1] - dp[n - 1] * p[n]);
}

double cd_kernel(const RecurrenceTable& t, double x, double y, int n) {
  n = resolve_n(t, n);
  const double scale = std::max(1.0, std::max(std::fabs(x), std::fabs(y)));
  if (std::fabs(x - y) < kDiagonalSwitch * scale) return cd_kernel_confluent(t, 0.5 * (x + y), n);
  std::vector<double> px, py;
  scaled_orthopoly(t, n, x, px);
  scaled_orthopoly(t, n, y, py);
  const double lw = 0.5 * (log_w(t, x) + log_w(t, y));
  if (std::isinf(lw)) return 0.0;
  const double num = px[n] * py[n - 1] - px[n - 1] * py[n];
  return std::exp(lw - t.log_mu0) * t.c(n) * num / (x - y);
}

double cd_kernel_sum(const RecurrenceTable& t, double x, double y, int n) {
  n = resolve_n(t, n);
  std::vector<double> px, py;
  scaled_orthopoly(t, n - 1, x, px);
  scaled_orthopoly(t, n - 1, y, py);
  const double lw = 0.5 * (log_w(t, x) + log_w(t, y));
  if (std::isinf(lw)) return 0.0;
  double s = 0.0;
  for (int j = 0; j < n; ++j) s += px[j] * py[j];
  return std::exp(lw - t.log_mu0) * s;
}

void y_first_column(const RecurrenceTable& t, double x, int n, cplx& y11, cplx& y21) {
  n = resolve_n(t, n);
  std::vector<double> p;
  scaled_orthopoly(t, n, x, p);
  const double pn = p[n] * std::exp(-0.5 * t.log_mu0);
  const double pn1 = p[n - 1] * std::exp(-0.5 * t.log_mu0);
  y11 = pn / leading_coeff(t, n);
  y21 = cplx(0.0, -2.0 * kPi) * leading_coeff(t, n - 1) * pn1;
}

double kernel_via_Y(const RecurrenceTable& t, double x, double y, int n) {
  n = resolve_n(t, n);
  const double scale = std::max(1.0, std::max(std::fabs(x), std::fabs(y)));
  const double lw = 0.5 * (log_w(t, x) + log_w(t, y));
  if (std::isinf(lw)) return 0.0;
  cplx ax, bx, ay, by;
  if (std::fabs(x - y) < kDiagonalSwitch * scale) {
    // confluent limit with derivatives from the differentiated recurrence
    const double m = 0.5 * (x + y);
    std::vector<double> p, dp;
    scaled_orthopoly(t, n, m, p, &dp);
    const double s = std::exp(-0.5 * t.log_mu0);
    const cplx y11 = p[n] * s / leading_coeff(t, n), dy11 = dp[n] * s / leading_coeff(t, n);
    const cplx f = cplx(0.0, -2.0 * kPi) * leading_coeff(t, n - 1) * s;
    const cplx y21 = f * p[n - 1], dy21 = f * dp[n - 1];
    const cplx val = -(dy11 * y21 - dy21 * y11) / cplx(0.0, 2.0 * kPi);
    return (std::exp(log_w(t, m)) * val).real();
  }
  y_first_column(t, x, n, ax, bx);
  y_first_column(t, y, n, ay, by);
  const cplx val = -(ax * by - bx * ay) / (cplx(0.0, 2.0 * kPi) * (x - y));
  return (std::exp(lw) * val).real();
}

}  // namespace rmt
