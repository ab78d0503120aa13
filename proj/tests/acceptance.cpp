// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rmt/equilibrium.hpp"
#include "rmt/kernels.hpp"
#include "rmt/orthopoly.hpp"
#include "rmt/parametrix.hpp"
#include "rmt/sampler.hpp"
#include "rmt/specialfn.hpp"
#include "rmt/szego.hpp"
#include "rmt/universality.hpp"

using namespace rmt;
namespace fs = std::filesystem;

namespace {

const Potential kGauss{{0, 0, 1}};
int g_failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("criterion %d: %s | %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(const char* f, double a) {
  char b[64];
  std::snprintf(b, sizeof b, f, a);
  return b;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool in_window(double s) { return s >= -1.3 && s <= -0.7; }

void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  auto r = universality_sweep(kGauss, 0.0, {8, 16, 32, 64}, default_universality_grid());
  double sinc = 0;
  for (double u = 0.25; u <= 2.5; u += 0.25)
    for (double v = 0.25; v <= 2.5; v += 0.25) {
      const double d = kPi * (u - v);
      const double ref = d == 0.0 ? 1.0 : std::sin(d) / d;
      sinc = std::max(sinc, std::fabs(eval_origin_bessel(0.0, u, v) - ref));
    }
  const double secs = seconds_since(t0);
  std::string d = "E(n)=";
  for (double e : r.weighted_error) d += fmt("%.3e ", e);
  d += fmt("slope=%.3f", r.slope) + (r.strictly_decreasing ? " decreasing" : " not-decreasing") +
       fmt(" sinc_err=%.1e", sinc) + fmt(" time=%.1fs", secs);
  report(1, r.strictly_decreasing && in_window(r.slope) && sinc <= 1e-12 && secs < 30, d);
}

void criterion2() {
  bool ok = true;
  std::string d;
  for (double a : {1.0, -0.25}) {
    auto r = universality_sweep(kGauss, a, {8, 16, 32, 64}, default_universality_grid());
    ok = ok && in_window(r.slope);
    d += fmt("alpha=%g ", a) + fmt("slope=%.3f ", r.slope);
  }
  report(2, ok, d);
}

void criterion3() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> pick_n(0, 2), pick_a(0, 3);
  const int ns[] = {8, 16, 32};
  const double as[] = {0.0, 0.5, 1.0, -0.25};
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const int n = ns[pick_n(rng)];
    const double a = as[pick_a(rng)];
    auto t = build_recurrence(kGauss, {a, n}, n);
    std::uniform_real_distribution<double> x(-1.4, 1.4);
    const double u = x(rng), v = x(rng);
    const double s = cd_kernel_sum(t, u, v), q = cd_kernel(t, u, v), y = kernel_via_Y(t, u, v);
    worst = std::max({worst, std::fabs(q - s) / std::fabs(s), std::fabs(y - s) / std::fabs(s)});
  }
  report(3, worst <= 1e-9, fmt("max relative disagreement %.2e over 100 pairs", worst));
}

void criterion4() {
  auto eq = solve_equilibrium_one_band(kGauss);
  const double e1 = std::fabs(eq.b() + std::sqrt(2.0)), e2 = std::fabs(eq.a() - std::sqrt(2.0));
  const double p0 = std::fabs(eq.psi0 - std::sqrt(2.0) / kPi);
  auto logpot = oracle::semicircle_log_potential;
  double res = 0;
  std::vector<double> inside;
  for (int i = 1; i <= 50; ++i) inside.push_back(eq.b() + (eq.a() - eq.b()) * i / 51.0);
  for (double x : inside) res = std::max(res, std::fabs(2 * logpot(x) - x * x - eq.ell));
  double margin = INFINITY;
  std::vector<double> outside;
  for (int i = 1; i <= 10; ++i) {
    outside.push_back(eq.a() + 0.1 * i);
    outside.push_back(eq.b() - 0.1 * i);
  }
  for (double x : outside) margin = std::min(margin, eq.ell + x * x - 2 * logpot(x));
  auto lib = check_variational(eq, inside, outside);
  const bool ok = e1 <= 1e-8 && e2 <= 1e-8 && p0 <= 1e-8 && res <= 1e-8 && margin > 0 &&
                  lib.max_inside_residual <= 1e-8 && lib.min_outside_margin > 0;
  report(4, ok, fmt("endpoint err %.1e", std::max(e1, e2)) + fmt(" psi0 err %.1e", p0) +
                    fmt(" residual %.1e", std::max(res, lib.max_inside_residual)) +
                    fmt(" outside margin %.3f", std::min(margin, lib.min_outside_margin)));
}

void criterion5() {
  SupportBands J{{{-1.5, -0.7}, {-0.3, 1.0}}};
  bool ok = true;
  std::string d;
  for (double a : {0.5, 1.0}) {
    auto sd = solve_xi(J, a);
    auto rep = check_szego(sd, default_band_probes(J, 8), default_gap_probes(J, 8), 4, 20);
    ok = ok && rep.max_band_jump <= 1e-8 && rep.max_gap_phase <= 1e-8 && rep.system_residual <= 1e-10 &&
         rep.bound_ratio_lower <= 2.0 && !rep.growth_trend;
    d += fmt("alpha=%g", a) + fmt(" xi=%.6f", sd.xi[0]) + fmt(" jump %.1e", rep.max_band_jump) +
         fmt(" phase %.1e", rep.max_gap_phase) + fmt(" residual %.1e", rep.system_residual) +
         fmt(" variation %.3f; ", rep.bound_ratio_lower);
  }
  report(5, ok, d);
}

void criterion6() {
  double jump = 0, cyc = 0, det = 0;
  for (double a : {0.0, 0.5, 1.0, -0.25})
    for (double r : {0.5, 5.0}) {
      for (int ray = 1; ray <= 8; ++ray) jump = std::max(jump, psi_jump_residual(a, r, ray));
      for (int k = 0; k < 8; ++k) {
        const cplx z = std::polar(r, (k + 0.5) * kPi / 4);
        cyc = std::max(cyc, psi_cyclic_residual(a, z));
        det = std::max(det, std::abs(psi_model(a, z).det() - 1.0));
      }
    }
  report(6, jump <= 1e-10 && cyc <= 1e-10 && det <= 1e-10,
         fmt("jump %.1e", jump) + fmt(" cyclic %.1e", cyc) + fmt(" det %.1e", det));
}

void criterion7() {
  auto eq = solve_equilibrium_one_band(kGauss);
  bool ok = true;
  std::string d;
  for (double a : {0.0, 1.0}) {
    auto sd = solve_xi(eq.support, a);
    auto rep = check_matching(eq, sd, a, {32, 64});
    const double ratio = rep.max_residual[0] / rep.max_residual[1];
    ok = ok && ratio >= 1.5 && ratio <= 2.6;
    d += fmt("alpha=%g", a) + fmt(" err32=%.3e", rep.max_residual[0]) + fmt(" err64=%.3e", rep.max_residual[1]) +
         fmt(" ratio=%.3f; ", ratio);
  }
  report(7, ok, d);
}

void criterion8() {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<double> ks;
  double m0 = 0, m2 = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    McmcConfig cfg;
    cfg.seed = seed;
    auto a = run_chain(kGauss, {0.0, 50}, cfg);
    auto b = run_chain(kGauss, {2.0, 50}, cfg);
    ks.push_back(a.ks_distance);
    m0 += a.zero_bin_mass / 5;
    m2 += b.zero_bin_mass / 5;
  }
  std::sort(ks.begin(), ks.end());
  const double depletion = 1.0 - m2 / m0, secs = seconds_since(t0);
  report(8, ks[2] <= 0.05 && depletion >= 0.2 && secs < 120,
         fmt("median KS %.4f", ks[2]) + fmt(" depletion %.2f", depletion) + fmt(" time=%.1fs", secs));
}

void criterion9() {
  double closed = 0, wr = 0, overlap = 0;
  for (double x : {0.3, 1.7, 6.0, 13.0, 40.0}) {
    const double s = std::sqrt(2.0 / (kPi * x));
    closed = std::max({closed, std::fabs(bessel_j(0.5, x) - s * std::sin(x)),
                       std::fabs(bessel_j(-0.5, x) - s * std::cos(x)),
                       std::abs(hankel_h1(0.5, cplx(x)) - cplx(0, -1) * s * std::exp(cplx(0, x)))});
  }
  for (double nu : {0.0, 0.5, 1.0, -0.25})
    for (cplx z : {cplx(0.7, 0.2), cplx(3.0, -1.0), cplx(-2.0, 5.0), cplx(12.5, 1.0), cplx(-20.0, -7.0), cplx(30.0, 0.0)}) {
      auto H1 = [&](cplx w) { return hankel_h1(nu, w); };
      auto H2 = [&](cplx w) { return hankel_h2(nu, w); };
      const cplx d1 = oracle::cauchy_derivative(H1, z), d2 = oracle::cauchy_derivative(H2, z);
      const cplx ref = cplx(0, -4) / (kPi * z);
      wr = std::max(wr, std::abs(H1(z) * d2 - H2(z) * d1 - ref) / std::abs(ref));
    }
  for (double nu : {0.0, 0.5, 1.0, -0.25, 1.5, 2.0})
    for (double r : {kSeriesRadius, kSeriesRadius + 2.0})
      for (int k = 0; k < 24; ++k) {
        const cplx z = std::polar(r, -kPi / 2 + kPi * k / 23.0);
        const cplx s = detail::bessel_j_series(nu, z), a = detail::bessel_j_asymptotic(nu, z);
        overlap = std::max(overlap, std::abs(s - a) / (std::abs(s) + std::exp(std::fabs(z.imag())) / std::sqrt(r)));
      }
  report(9, closed <= 1e-10 && wr <= 1e-10 && overlap <= 1e-10,
         fmt("closed forms %.1e", closed) + fmt(" Wronskian %.1e", wr) + fmt(" overlap %.1e", overlap));
}

std::string body(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream out;
  std::string line;
  while (std::getline(in, line))
    if (line.empty() || line[0] != '#') out << line << '\n';
  return out.str();
}

void criterion10(const std::string& cli) {
  const fs::path base = fs::temp_directory_path() / "rmtlab_acceptance_determinism";
  fs::remove_all(base);
  bool ok = true;
  int files = 0;
  const std::vector<std::string> runs = {"mcmc --seed 17 --n-list 20", "universality --seed 17 --n-list 8,16",
                                         "equilibrium --seed 17"};
  for (size_t i = 0; i < runs.size(); ++i) {
    const fs::path a = base / ("a" + std::to_string(i)), b = base / ("b" + std::to_string(i));
    std::string cfg = (base / "mcmc.json").string();
    fs::create_directories(base);
    std::ofstream(cfg) << R"({"mcmc": {"sweeps": 600, "burn_in": 100, "chains": 2, "n_particles": 20}})";
    const std::string extra = i == 0 ? " --config " + cfg : "";
    for (const auto& dir : {a, b}) {
      const std::string cmd = cli + " " + runs[i] + extra + " --out " + dir.string() + " >/dev/null 2>&1";
      int st = std::system(cmd.c_str());
      (void)st;
    }
    for (auto& f : fs::directory_iterator(a)) {
      if (f.path().extension() != ".csv") continue;
      ++files;
      if (!fs::exists(b / f.path().filename()) || body(f.path()) != body(b / f.path().filename())) ok = false;
    }
  }
  report(10, ok && files > 0, "compared " + std::to_string(files) + " CSV bodies across repeated runs");
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "rmtlab";
  const std::vector<std::function<void()>> all = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                  criterion6, criterion7, criterion8, criterion9,
                                                  [&] { criterion10(cli); }};
  for (size_t i = 0; i < all.size(); ++i) {
    try {
      all[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), false, std::string("exception: ") + e.what());
    }
  }
  std::printf("%d of %zu criteria failed\n", g_failures, all.size());
  return g_failures == 0 ? 0 : 1;
}
