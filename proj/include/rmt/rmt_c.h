/* C interface to the rmtlab library. All functions return an rmt_status;
   on failure rmt_last_error() describes the problem (per thread). */
#ifndef RMT_C_H
#define RMT_C_H

#include <stddef.h>
#include <stdint.h>

#if defined(RMT_BUILDING_CAPI)
#define RMT_API __attribute__((visibility("default")))
#else
#define RMT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rmt_status {
  RMT_OK = 0,
  RMT_E_INVALID = 1,
  RMT_E_DOMAIN = 2,
  RMT_E_NO_CONVERGENCE = 3,
  RMT_E_SINGULAR = 4,
  RMT_E_UNSUPPORTED = 5,
  RMT_E_BUFFER = 6,
  RMT_E_INTERNAL = 7
} rmt_status;

typedef struct rmt_equilibrium rmt_equilibrium;
typedef struct rmt_recurrence rmt_recurrence;
typedef struct rmt_szego rmt_szego;

RMT_API const char* rmt_last_error(void);
RMT_API const char* rmt_version(void);

/* Admissibility. Writes the violations separated by newlines into buf
   (empty string when usable) and their number into count. */
RMT_API rmt_status rmt_validate(const double* coeffs, size_t ncoeffs, double alpha, int n,
                                char* buf, size_t buflen, int* count);

RMT_API rmt_status rmt_potential_eval(const double* coeffs, size_t ncoeffs, double x, double* v,
                                      double* dv);
RMT_API rmt_status rmt_log_weight(const double* coeffs, size_t ncoeffs, double alpha, int n,
                                  double x, double* out);

/* Equilibrium measure for a one-band potential. */
typedef struct rmt_equilibrium_info {
  double left, right; /* support endpoints b_0, a_1 */
  double ell;         /* Lagrange multiplier */
  double psi0;        /* density at 0 */
  double delta;       /* default local disk radius */
  int newton_iterations;
} rmt_equilibrium_info;

typedef struct rmt_variational_info {
  double max_inside_residual;
  double min_outside_margin;
  double h_min_on_band;
  int singular;
} rmt_variational_info;

RMT_API rmt_status rmt_equilibrium_create(const double* coeffs, size_t ncoeffs, rmt_equilibrium** out);
RMT_API void rmt_equilibrium_destroy(rmt_equilibrium* eq);
RMT_API rmt_status rmt_equilibrium_info_get(const rmt_equilibrium* eq, rmt_equilibrium_info* info);
RMT_API rmt_status rmt_equilibrium_h_coeffs(const rmt_equilibrium* eq, double* buf, size_t cap,
                                            size_t* len);
RMT_API rmt_status rmt_equilibrium_density(const rmt_equilibrium* eq, double x, double* out);
RMT_API rmt_status rmt_equilibrium_cdf(const rmt_equilibrium* eq, double x, double* out);
RMT_API rmt_status rmt_equilibrium_variational(const rmt_equilibrium* eq, const double* inside,
                                               size_t nin, const double* outside, size_t nout,
                                               rmt_variational_info* info);
/* g, phi take side = +1/-1 on the cut and 0 elsewhere. */
RMT_API rmt_status rmt_equilibrium_g(const rmt_equilibrium* eq, double re, double im, int side,
                                     double* ore, double* oim);
RMT_API rmt_status rmt_equilibrium_phi(const rmt_equilibrium* eq, double re, double im, int side,
                                       double* ore, double* oim);
RMT_API rmt_status rmt_equilibrium_f(const rmt_equilibrium* eq, double re, double im, double* ore,
                                     double* oim);

/* Recurrence coefficients of the orthonormal polynomials for w_n. */
typedef struct rmt_quadrature_options {
  double tail_log10;   /* <= 0 selects the default */
  int initial_nodes;
  int panels_per_side;
  int max_refinements;
  double tolerance;
} rmt_quadrature_options;

RMT_API rmt_status rmt_recurrence_create(const double* coeffs, size_t ncoeffs, double alpha, int n,
                                         int degree, const rmt_quadrature_options* opt,
                                         rmt_recurrence** out);
RMT_API void rmt_recurrence_destroy(rmt_recurrence* t);
RMT_API rmt_status rmt_recurrence_degree(const rmt_recurrence* t, int* degree);
/* diag and offdiag each need room for degree entries. */
RMT_API rmt_status rmt_recurrence_coeffs(const rmt_recurrence* t, double* diag, double* offdiag,
                                         size_t cap, double* log_mu0);
RMT_API rmt_status rmt_orthopoly(const rmt_recurrence* t, int k, double x, double* out);
RMT_API rmt_status rmt_leading_coeff(const rmt_recurrence* t, int k, double* out);
RMT_API rmt_status rmt_cd_kernel(const rmt_recurrence* t, double x, double y, double* out);
RMT_API rmt_status rmt_cd_kernel_sum(const rmt_recurrence* t, double x, double y, double* out);
RMT_API rmt_status rmt_kernel_via_y(const rmt_recurrence* t, double x, double y, double* out);

/* JSON record of a table. rmt_recurrence_serialize writes a NUL-terminated
   string; with buf NULL it only reports the length (without the NUL). */
RMT_API rmt_status rmt_recurrence_serialize(const rmt_recurrence* t, char* buf, size_t cap, size_t* len);
RMT_API rmt_status rmt_recurrence_parse(const char* text, rmt_recurrence** out);
RMT_API rmt_status rmt_recurrence_cache_key(const double* coeffs, size_t ncoeffs, double alpha, int n,
                                            int degree, char* buf, size_t cap);

/* Limit kernels: kind 0 origin Bessel, 1 hard-edge Bessel, 2 sine. */
RMT_API rmt_status rmt_limit_kernel(int kind, double alpha, double u, double v, double* out);
RMT_API rmt_status rmt_correlation_det(const double* m, size_t dim, double* out);

RMT_API rmt_status rmt_rescaled_kernel(const rmt_recurrence* t, const rmt_equilibrium* eq, double u,
                                       double v, double* out);
RMT_API rmt_status rmt_extended_rescaled(const rmt_recurrence* t, const rmt_equilibrium* eq,
                                         double u, double v, double* out);
RMT_API rmt_status rmt_finite_n_correlations(const rmt_recurrence* t, const double* points,
                                             size_t m, double* out);

/* Universality sweep: errors arrays need nn entries. */
RMT_API rmt_status rmt_universality_sweep(const double* coeffs, size_t ncoeffs, double alpha,
                                          const int* ns, size_t nn, const double* grid, size_t ng,
                                          const rmt_quadrature_options* opt, double* weighted_error,
                                          double* unweighted_error, double* slope,
                                          double* slope_unweighted);

/* Szego function on bands given as [lo_0, hi_0, lo_1, hi_1, ...]. */
typedef struct rmt_szego_report {
  double max_band_jump;
  double max_gap_phase;
  double system_residual;
  double cond_a;
  double bound_ratio_lower;
  double bound_ratio_upper;
  int growth_trend;
  double d_inf_closed_re, d_inf_closed_im;
  double d_inf_numeric_re, d_inf_numeric_im;
} rmt_szego_report;

RMT_API rmt_status rmt_szego_create(const double* edges, size_t nedges, double alpha, rmt_szego** out);
RMT_API void rmt_szego_destroy(rmt_szego* sd);
RMT_API rmt_status rmt_szego_xi(const rmt_szego* sd, double* buf, size_t cap, size_t* len);
RMT_API rmt_status rmt_szego_D(const rmt_szego* sd, double re, double im, int side, double* ore,
                               double* oim);
RMT_API rmt_status rmt_szego_check(const rmt_szego* sd, int probes_per_interval, rmt_szego_report* rep);

/* Model problem and matching. Matrices are 8 doubles: re/im of a, b, c, d. */
RMT_API rmt_status rmt_psi_model(double alpha, double re, double im, double* out8);
RMT_API rmt_status rmt_psi_jump_residual(double alpha, double r, int ray, double* out);
RMT_API rmt_status rmt_psi_cyclic_residual(double alpha, double re, double im, double* out);
/* residuals: nn max residuals; point_residuals (optional): nn * npoints_cap
   row-major, npoints receives the number of boundary points used. */
RMT_API rmt_status rmt_matching(const rmt_equilibrium* eq, double alpha, const int* ns, size_t nn,
                                double delta, double* residuals, double* point_residuals,
                                size_t npoints_cap, size_t* npoints, double* slope);

/* Metropolis sampler. */
typedef struct rmt_mcmc_config {
  int n_particles;
  int sweeps;
  int burn_in;
  double proposal_scale; /* 0 selects the default */
  uint64_t seed;
  int bins;
} rmt_mcmc_config;

typedef struct rmt_mcmc_summary {
  double acceptance_rate;
  double ks_distance;
  double zero_bin_mass;
  double proposal_scale;
  long long samples;
  int mistuned;
} rmt_mcmc_summary;

/* edges needs bins + 1 entries and counts bins entries (either may be NULL). */
RMT_API rmt_status rmt_mcmc_run(const double* coeffs, size_t ncoeffs, double alpha,
                                const rmt_mcmc_config* cfg, rmt_mcmc_summary* out, double* edges,
                                long long* counts);

/* Special functions. */
RMT_API rmt_status rmt_bessel_j(double nu, double re, double im, double* ore, double* oim);
RMT_API rmt_status rmt_hankel(int kind, double nu, double re, double im, double* ore, double* oim);

#ifdef __cplusplus
}
#endif

#endif
