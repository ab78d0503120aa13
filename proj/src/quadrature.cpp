#include "rmt/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <map>
#include <memory>
#include <mutex>

#include "rmt/common.hpp"

namespace rmt {

const Rule& gauss_legendre(int npts) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Rule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[npts];
  if (!slot) {
    if (npts < 1) fail(ErrorCode::invalid_argument, "rule needs at least one node");
    gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(npts);
    auto r = std::make_unique<Rule>();
    r->x.resize(npts);
    r->w.resize(npts);
    for (int i = 0; i < npts; ++i)
      gsl_integration_glfixed_point(-1.0, 1.0, i, &r->x[i], &r->w[i], t);
    gsl_integration_glfixed_table_free(t);
    slot = std::move(r);
  }
  return *slot;
}

Rule gauss_jacobi_left(int npts, double b) {
  // GSL weight on [a,b]: (b-x)^alpha (x-a)^beta
  gsl_integration_fixed_workspace* ws =
      gsl_integration_fixed_alloc(gsl_integration_fixed_jacobi, npts, 0.0, 1.0, 0.0, b);
  if (!ws) fail(ErrorCode::no_convergence, "Gauss-Jacobi rule construction failed");
  Rule r;
  r.x.assign(gsl_integration_fixed_nodes(ws), gsl_integration_fixed_nodes(ws) + npts);
  r.w.assign(gsl_integration_fixed_weights(ws), gsl_integration_fixed_weights(ws) + npts);
  gsl_integration_fixed_free(ws);
  return r;
}

Rule legendre_on(double lo, double hi, int npts) {
  const Rule& ref = gauss_legendre(npts);
  Rule r;
  r.x.resize(npts);
  r.w.resize(npts);
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  for (int i = 0; i < npts; ++i) {
    r.x[i] = c + h * ref.x[i];
    r.w[i] = h * ref.w[i];
  }
  return r;
}

}  // namespace rmt
