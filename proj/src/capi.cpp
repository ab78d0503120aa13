#include "rmt/rmt_c.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "rmt/equilibrium.hpp"
#include "rmt/kernels.hpp"
#include "rmt/orthopoly.hpp"
#include "rmt/parametrix.hpp"
#include "rmt/potential.hpp"
#include "rmt/recurrence_io.hpp"
#include "rmt/sampler.hpp"
#include "rmt/specialfn.hpp"
#include "rmt/szego.hpp"
#include "rmt/universality.hpp"

struct rmt_equilibrium {
  rmt::EquilibriumData data;
};
struct rmt_recurrence {
  rmt::RecurrenceTable table;
};
struct rmt_szego {
  rmt::SzegoData data;
};

namespace {

thread_local std::string g_last_error;

rmt_status set_error(rmt_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

rmt_status to_status(rmt::ErrorCode c) {
  switch (c) {
    case rmt::ErrorCode::ok: return RMT_OK;
    case rmt::ErrorCode::invalid_argument: return RMT_E_INVALID;
    case rmt::ErrorCode::domain: return RMT_E_DOMAIN;
    case rmt::ErrorCode::no_convergence: return RMT_E_NO_CONVERGENCE;
    case rmt::ErrorCode::singular: return RMT_E_SINGULAR;
    case rmt::ErrorCode::unsupported: return RMT_E_UNSUPPORTED;
  }
  return RMT_E_INTERNAL;
}

template <class F>
rmt_status guarded(F&& f) {
  g_last_error.clear();
  try {
    f();
    return RMT_OK;
  } catch (const rmt::Error& e) {
    return set_error(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(RMT_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(RMT_E_INTERNAL, e.what());
  } catch (...) {
    return set_error(RMT_E_INTERNAL, "unknown exception");
  }
}

void need(const void* p, const char* name) {
  if (!p) rmt::fail(rmt::ErrorCode::invalid_argument, std::string(name) + " is null");
}

rmt::Potential make_potential(const double* c, size_t n) {
  if (!c || n == 0) rmt::fail(rmt::ErrorCode::invalid_argument, "potential coefficients are empty");
  return rmt::Potential{std::vector<double>(c, c + n)};
}

rmt::QuadratureOptions make_options(const rmt_quadrature_options* o) {
  rmt::QuadratureOptions q;
  if (!o) return q;
  if (o->tail_log10 > 0) q.tail_log10 = o->tail_log10;
  if (o->initial_nodes > 0) q.initial_nodes = o->initial_nodes;
  if (o->panels_per_side > 0) q.panels_per_side = o->panels_per_side;
  if (o->max_refinements > 0) q.max_refinements = o->max_refinements;
  if (o->tolerance > 0) q.tolerance = o->tolerance;
  return q;
}

void put(const rmt::cplx& z, double* re, double* im) {
  need(re, "output");
  need(im, "output");
  *re = z.real();
  *im = z.imag();
}

void put_matrix(const rmt::Matrix2& m, double* out) {
  need(out, "output");
  const rmt::cplx v[4] = {m.a, m.b, m.c, m.d};
  for (int i = 0; i < 4; ++i) {
    out[2 * i] = v[i].real();
    out[2 * i + 1] = v[i].imag();
  }
}

}  // namespace

extern "C" {

const char* rmt_last_error(void) { return g_last_error.c_str(); }
const char* rmt_version(void) { return "1.0.0"; }

rmt_status rmt_validate(const double* coeffs, size_t ncoeffs, double alpha, int n, char* buf,
                        size_t buflen, int* count) {
  return guarded([&] {
    rmt::Potential p{coeffs ? std::vector<double>(coeffs, coeffs + ncoeffs) : std::vector<double>{}};
    auto msgs = rmt::validate(p, rmt::EnsembleParams{alpha, n});
    std::string all;
    for (const auto& m : msgs) {
      if (!all.empty()) all += '\n';
      all += m;
    }
    if (count) *count = static_cast<int>(msgs.size());
    if (buf && buflen > 0) {
      if (all.size() + 1 > buflen) rmt::fail(rmt::ErrorCode::invalid_argument, "message buffer too small");
      std::memcpy(buf, all.c_str(), all.size() + 1);
    }
  });
}

rmt_status rmt_potential_eval(const double* coeffs, size_t ncoeffs, double x, double* v, double* dv) {
  return guarded([&] {
    auto p = make_potential(coeffs, ncoeffs);
    if (v) *v = p(x);
    if (dv) *dv = p.derivative(x);
  });
}

rmt_status rmt_log_weight(const double* coeffs, size_t ncoeffs, double alpha, int n, double x,
                          double* out) {
  return guarded([&] {
    need(out, "output");
    *out = rmt::eval_log_weight(make_potential(coeffs, ncoeffs), rmt::EnsembleParams{alpha, n}, x);
  });
}

rmt_status rmt_equilibrium_create(const double* coeffs, size_t ncoeffs, rmt_equilibrium** out) {
  return guarded([&] {
    need(out, "output handle");
    *out = nullptr;
    auto p = make_potential(coeffs, ncoeffs);
    auto msgs = rmt::validate(p);
    if (!msgs.empty()) rmt::fail(rmt::ErrorCode::invalid_argument, msgs.front());
    *out = new rmt_equilibrium{rmt::solve_equilibrium_one_band(p)};
  });
}

void rmt_equilibrium_destroy(rmt_equilibrium* eq) { delete eq; }

rmt_status rmt_equilibrium_info_get(const rmt_equilibrium* eq, rmt_equilibrium_info* info) {
  return guarded([&] {
    need(eq, "equilibrium");
    need(info, "output");
    info->left = eq->data.b();
    info->right = eq->data.a();
    info->ell = eq->data.ell;
    info->psi0 = eq->data.psi0;
    info->delta = eq->data.delta;
    info->newton_iterations = eq->data.newton_iterations;
  });
}

rmt_status rmt_equilibrium_h_coeffs(const rmt_equilibrium* eq, double* buf, size_t cap, size_t* len) {
  return guarded([&] {
    need(eq, "equilibrium");
    const auto& h = eq->data.h_cheb;
    if (len) *len = h.size();
    if (!buf) return;
    if (cap < h.size()) rmt::fail(rmt::ErrorCode::invalid_argument, "coefficient buffer too small");
    std::copy(h.begin(), h.end(), buf);
  });
}

rmt_status rmt_equilibrium_density(const rmt_equilibrium* eq, double x, double* out) {
  return guarded([&] {
    need(eq, "equilibrium");
    need(out, "output");
    *out = rmt::eval_density(eq->data, x);
  });
}

rmt_status rmt_equilibrium_cdf(const rmt_equilibrium* eq, double x, double* out) {
  return guarded([&] {
    need(eq, "equilibrium");
    need(out, "output");
    *out = rmt::eval_cdf(eq->data, x);
  });
}

rmt_status rmt_equilibrium_variational(const rmt_equilibrium* eq, const double* inside, size_t nin,
                                       const double* outside, size_t nout, rmt_variational_info* info) {
  return guarded([&] {
    need(eq, "equilibrium");
    need(info, "output");
    std::vector<double> in(inside, inside + (inside ? nin : 0));
    std::vector<double> out(outside, outside + (outside ? nout : 0));
    auto r = rmt::check_variational(eq->data, in, out);
    info->max_inside_residual = r.max_inside_residual;
    info->min_outside_margin = r.min_outside_margin;
    info->h_min_on_band = r.h_min_on_band;
    info->singular = r.singular ? 1 : 0;
  });
}

rmt_status rmt_equilibrium_g(const rmt_equilibrium* eq, double re, double im, int side, double* ore,
                             double* oim) {
  return guarded([&] {
    need(eq, "equilibrium");
    put(rmt::eval_g(eq->data, {re, im}, side), ore, oim);
  });
}

rmt_status rmt_equilibrium_phi(const rmt_equilibrium* eq, double re, double im, int side, double* ore,
                               double* oim) {
  return guarded([&] {
    need(eq, "equilibrium");
    put(rmt::eval_phi(eq->data, {re, im}, side), ore, oim);
  });
}

rmt_status rmt_equilibrium_f(const rmt_equilibrium* eq, double re, double im, double* ore, double* oim) {
  return guarded([&] {
    need(eq, "equilibrium");
    put(rmt::conformal_map_f(eq->data, {re, im}), ore, oim);
  });
}

rmt_status rmt_recurrence_create(const double* coeffs, size_t ncoeffs, double alpha, int n, int degree,
                                 const rmt_quadrature_options* opt, rmt_recurrence** out) {
  return guarded([&] {
    need(out, "output handle");
    *out = nullptr;
    auto p = make_potential(coeffs, ncoeffs);
    rmt::EnsembleParams e{alpha, n};
    auto msgs = rmt::validate(p, e);
    if (!msgs.empty()) rmt::fail(rmt::ErrorCode::invalid_argument, msgs.front());
    if (degree < 1) rmt::fail(rmt::ErrorCode::invalid_argument, "degree must be at least 1");
    *out = new rmt_recurrence{rmt::build_recurrence(p, e, degree, make_options(opt))};
  });
}

void rmt_recurrence_destroy(rmt_recurrence* t) { delete t; }

rmt_status rmt_recurrence_degree(const rmt_recurrence* t, int* degree) {
  return guarded([&] {
    need(t, "recurrence");
    need(degree, "output");
    *degree = t->table.degree();
  });
}

rmt_status rmt_recurrence_coeffs(const rmt_recurrence* t, double* diag, double* offdiag, size_t cap,
                                 double* log_mu0) {
  return guarded([&] {
    need(t, "recurrence");
    const auto& tb = t->table;
    if ((diag || offdiag) && cap < tb.diag.size())
      rmt::fail(rmt::ErrorCode::invalid_argument, "coefficient buffer too small");
    if (diag) std::copy(tb.diag.begin(), tb.diag.end(), diag);
    if (offdiag) std::copy(tb.offdiag.begin(), tb.offdiag.begin() + tb.diag.size(), offdiag);
    if (log_mu0) *log_mu0 = tb.log_mu0;
  });
}

rmt_status rmt_orthopoly(const rmt_recurrence* t, int k, double x, double* out) {
  return guarded([&] {
    need(t, "recurrence");
    need(out, "output");
    *out = rmt::eval_orthopoly(t->table, k, x);
  });
}

rmt_status rmt_leading_coeff(const rmt_recurrence* t, int k, double* out) {
  return guarded([&] {
    need(t, "recurrence");
    need(out, "output");
    *out = rmt::leading_coeff(t->table, k);
  });
}

rmt_status rmt_cd_kernel(const rmt_recurrence* t, double x, double y, double* out) {
  return guarded([&] {
    need(t, "recurrence");
    need(out, "output");
    *out = rmt::cd_kernel(t->table, x, y);
  });
}

rmt_status rmt_cd_kernel_sum(const rmt_recurrence* t, double x, double y, double* out) {
  return guarded([&] {
    need(t, "recurrence");
    need(out, "output");
    *out = rmt::cd_kernel_sum(t->table, x, y);
  });
}

rmt_status rmt_kernel_via_y(const rmt_recurrence* t, double x, double y, double* out) {
  return guarded([&] {
    need(t, "recurrence");
    need(out, "output");
    *out = rmt::kernel_via_Y(t->table, x, y);
  });
}

rmt_status rmt_recurrence_serialize(const rmt_recurrence* t, char* buf, size_t cap, size_t* len) {
  return guarded([&] {
    need(t, "recurrence");
    const std::string s = rmt::serialize_recurrence(t->table);
    if (len) *len = s.size();
    if (!buf) return;
    if (cap < s.size() + 1) rmt::fail(rmt::ErrorCode::invalid_argument, "record buffer too small");
    std::memcpy(buf, s.c_str(), s.size() + 1);
  });
}

rmt_status rmt_recurrence_parse(const char* text, rmt_recurrence** out) {
  return guarded([&] {
    need(out, "output handle");
    *out = nullptr;
    need(text, "record");
    *out = new rmt_recurrence{rmt::parse_recurrence(text)};
  });
}

rmt_status rmt_recurrence_cache_key(const double* coeffs, size_t ncoeffs, double alpha, int n, int degree,
                                    char* buf, size_t cap) {
  return guarded([&] {
    need(buf, "output");
    const std::string k = rmt::recurrence_cache_key(make_potential(coeffs, ncoeffs), {alpha, n}, degree);
    if (cap < k.size() + 1) rmt::fail(rmt::ErrorCode::invalid_argument, "key buffer too small");
    std::memcpy(buf, k.c_str(), k.size() + 1);
  });
}

rmt_status rmt_limit_kernel(int kind, double alpha, double u, double v, double* out) {
  return guarded([&] {
    need(out, "output");
    switch (kind) {
      case 0: *out = rmt::eval_origin_bessel(alpha, u, v); break;
      case 1: *out = rmt::eval_hard_edge(alpha, u, v); break;
      case 2: *out = rmt::eval_sine(u, v); break;
      default: rmt::fail(rmt::ErrorCode::invalid_argument, "unknown kernel kind");
    }
  });
}

rmt_status rmt_correlation_det(const double* m, size_t dim, double* out) {
  return guarded([&] {
    need(out, "output");
    if (dim > 0) need(m, "matrix");
    std::vector<std::vector<double>> rows(dim, std::vector<double>(dim));
    for (size_t i = 0; i < dim; ++i)
      for (size_t j = 0; j < dim; ++j) rows[i][j] = m[i * dim + j];
    *out = rmt::correlation_det(rows);
  });
}

rmt_status rmt_rescaled_kernel(const rmt_recurrence* t, const rmt_equilibrium* eq, double u, double v,
                               double* out) {
  return guarded([&] {
    need(t, "recurrence");
    need(eq, "equilibrium");
    need(out, "output");
    *out = rmt::rescaled_kernel(t->table, eq->data, u, v);
  });
}

rmt_status rmt_extended_rescaled(const rmt_recurrence* t, const rmt_equilibrium* eq, double u, double v,
                                 double* out) {
  return guarded([&] {
    need(t, "recurrence");
    need(eq, "equilibrium");
    need(out, "output");
    *out = rmt::extended_rescaled(t->table, eq->data, u, v);
  });
}

rmt_status rmt_finite_n_correlations(const rmt_recurrence* t, const double* points, size_t m, double* out) {
  return guarded([&] {
    need(t, "recurrence");
    need(out, "output");
    if (m > 0) need(points, "points");
    *out = rmt::finite_n_correlations(t->table, std::vector<double>(points, points + m));
  });
}

rmt_status rmt_universality_sweep(const double* coeffs, size_t ncoeffs, double alpha, const int* ns,
                                  size_t nn, const double* grid, size_t ng,
                                  const rmt_quadrature_options* opt, double* weighted_error,
                                  double* unweighted_error, double* slope, double* slope_unweighted) {
  return guarded([&] {
    auto p = make_potential(coeffs, ncoeffs);
    need(ns, "n list");
    std::vector<int> nv(ns, ns + nn);
    std::vector<double> gv = grid ? std::vector<double>(grid, grid + ng) : rmt::default_universality_grid();
    auto r = rmt::universality_sweep(p, alpha, nv, gv, make_options(opt));
    for (size_t i = 0; i < nn; ++i) {
      if (weighted_error) weighted_error[i] = r.weighted_error[i];
      if (unweighted_error) unweighted_error[i] = r.unweighted_error[i];
    }
    if (slope) *slope = r.slope;
    if (slope_unweighted) *slope_unweighted = r.slope_unweighted;
  });
}

rmt_status rmt_szego_create(const double* edges, size_t nedges, double alpha, rmt_szego** out) {
  return guarded([&] {
    need(out, "output handle");
    *out = nullptr;
    need(edges, "band edges");
    if (nedges < 2 || nedges % 2 != 0)
      rmt::fail(rmt::ErrorCode::invalid_argument, "band edges must come in pairs");
    rmt::SupportBands s;
    for (size_t i = 0; i < nedges; i += 2) s.bands.emplace_back(edges[i], edges[i + 1]);
    s.validate();
    *out = new rmt_szego{rmt::solve_xi(s, alpha)};
  });
}

void rmt_szego_destroy(rmt_szego* sd) { delete sd; }

rmt_status rmt_szego_xi(const rmt_szego* sd, double* buf, size_t cap, size_t* len) {
  return guarded([&] {
    need(sd, "szego");
    const auto& xi = sd->data.xi;
    if (len) *len = xi.size();
    if (!buf) return;
    if (cap < xi.size()) rmt::fail(rmt::ErrorCode::invalid_argument, "xi buffer too small");
    std::copy(xi.begin(), xi.end(), buf);
  });
}

rmt_status rmt_szego_D(const rmt_szego* sd, double re, double im, int side, double* ore, double* oim) {
  return guarded([&] {
    need(sd, "szego");
    put(rmt::eval_D(sd->data, {re, im}, side), ore, oim);
  });
}

rmt_status rmt_szego_check(const rmt_szego* sd, int probes, rmt_szego_report* rep) {
  return guarded([&] {
    need(sd, "szego");
    need(rep, "output");
    if (probes < 1) rmt::fail(rmt::ErrorCode::invalid_argument, "probe count must be positive");
    const auto& s = sd->data.support;
    auto r = rmt::check_szego(sd->data, rmt::default_band_probes(s, probes),
                              rmt::default_gap_probes(s, probes));
    rep->max_band_jump = r.max_band_jump;
    rep->max_gap_phase = r.max_gap_phase;
    rep->system_residual = r.system_residual;
    rep->cond_a = r.cond_a;
    rep->bound_ratio_lower = r.bound_ratio_lower;
    rep->bound_ratio_upper = r.bound_ratio_upper;
    rep->growth_trend = r.growth_trend ? 1 : 0;
    rep->d_inf_closed_re = r.d_inf_closed.real();
    rep->d_inf_closed_im = r.d_inf_closed.imag();
    rep->d_inf_numeric_re = r.d_inf_numeric.real();
    rep->d_inf_numeric_im = r.d_inf_numeric.imag();
  });
}

rmt_status rmt_psi_model(double alpha, double re, double im, double* out8) {
  return guarded([&] { put_matrix(rmt::psi_model(alpha, {re, im}), out8); });
}

rmt_status rmt_psi_jump_residual(double alpha, double r, int ray, double* out) {
  return guarded([&] {
    need(out, "output");
    *out = rmt::psi_jump_residual(alpha, r, ray);
  });
}

rmt_status rmt_psi_cyclic_residual(double alpha, double re, double im, double* out) {
  return guarded([&] {
    need(out, "output");
    *out = rmt::psi_cyclic_residual(alpha, {re, im});
  });
}

rmt_status rmt_matching(const rmt_equilibrium* eq, double alpha, const int* ns, size_t nn, double delta,
                        double* residuals, double* point_residuals, size_t npoints_cap, size_t* npoints,
                        double* slope) {
  return guarded([&] {
    need(eq, "equilibrium");
    need(ns, "n list");
    auto sd = rmt::solve_xi(eq->data.support, alpha);
    auto r = rmt::check_matching(eq->data, sd, alpha, std::vector<int>(ns, ns + nn), delta);
    const size_t np = r.point_residual.empty() ? 0 : r.point_residual.front().size();
    if (npoints) *npoints = np;
    if (point_residuals && npoints_cap < np)
      rmt::fail(rmt::ErrorCode::invalid_argument, "point residual buffer too small");
    for (size_t i = 0; i < nn; ++i) {
      if (residuals) residuals[i] = r.max_residual[i];
      if (point_residuals)
        std::copy(r.point_residual[i].begin(), r.point_residual[i].end(), point_residuals + i * npoints_cap);
    }
    if (slope) *slope = r.slope;
  });
}

rmt_status rmt_mcmc_run(const double* coeffs, size_t ncoeffs, double alpha, const rmt_mcmc_config* cfg,
                        rmt_mcmc_summary* out, double* edges, long long* counts) {
  return guarded([&] {
    need(cfg, "config");
    need(out, "output");
    auto p = make_potential(coeffs, ncoeffs);
    rmt::McmcConfig c;
    c.n_particles = cfg->n_particles;
    c.sweeps = cfg->sweeps;
    c.burn_in = cfg->burn_in;
    c.proposal_scale = cfg->proposal_scale;
    c.seed = cfg->seed;
    c.bins = cfg->bins;
    rmt::EnsembleParams e{alpha, c.n_particles};
    auto msgs = rmt::validate(p, e);
    if (!msgs.empty()) rmt::fail(rmt::ErrorCode::invalid_argument, msgs.front());
    auto r = rmt::run_chain(p, e, c);
    out->acceptance_rate = r.acceptance_rate;
    out->ks_distance = r.ks_distance;
    out->zero_bin_mass = r.zero_bin_mass;
    out->proposal_scale = r.proposal_scale;
    out->samples = r.samples;
    out->mistuned = r.mistuned ? 1 : 0;
    if (edges) std::copy(r.bin_edges.begin(), r.bin_edges.end(), edges);
    if (counts) std::copy(r.counts.begin(), r.counts.end(), counts);
  });
}

rmt_status rmt_bessel_j(double nu, double re, double im, double* ore, double* oim) {
  return guarded([&] { put(rmt::bessel_j(nu, rmt::cplx{re, im}), ore, oim); });
}

rmt_status rmt_hankel(int kind, double nu, double re, double im, double* ore, double* oim) {
  return guarded([&] {
    if (kind != 1 && kind != 2) rmt::fail(rmt::ErrorCode::invalid_argument, "Hankel kind must be 1 or 2");
    rmt::cplx z{re, im};
    put(kind == 1 ? rmt::hankel_h1(nu, z) : rmt::hankel_h2(nu, z), ore, oim);
  });
}

}  // extern "C"
