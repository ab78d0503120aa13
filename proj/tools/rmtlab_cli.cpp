// rmtlab: command-line driver for the experiments. Links only the C API.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rmt/rmt_c.h"

namespace fs = std::filesystem;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

enum Exit { kPass = 0, kThresholdFail = 1, kConfigInvalid = 2, kNumericFailure = 3 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
  NumericError(rmt_status s, const std::string& what) : std::runtime_error(what), status(s) {}
  rmt_status status;
};

void check(rmt_status s, const char* what) {
  if (s == RMT_OK) return;
  std::string msg = std::string(what) + ": " + rmt_last_error();
  if (s == RMT_E_INVALID) throw ConfigError(msg);
  throw NumericError(s, msg);
}

// ---------------------------------------------------------------- config

struct Settings {
  std::vector<double> potential{0.0, 0.0, 1.0};
  double alpha = 0.0;
  std::vector<int> n_list{8, 16, 32, 64};
  std::vector<double> grid{0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0, 2.25, 2.5};
  double delta = 0.0;
  rmt_quadrature_options quad{0.0, 0, 0, 0, 0.0};
  std::vector<std::pair<double, double>> bands{{-1.5, -0.7}, {-0.3, 1.0}};
  int probes = 8;
  int density_samples = 201;
  int mcmc_particles = 50, mcmc_sweeps = 4000, mcmc_burn_in = 1000, mcmc_bins = 41, mcmc_chains = 5;
  double mcmc_proposal = 0.0;
  std::optional<double> compare_alpha;
  std::uint64_t seed = 1;
  std::string out = "rmtlab_out";
  std::string cache_dir;  // empty disables the recurrence cache
};

void allow_only(const json& obj, const std::set<std::string>& keys, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!keys.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

double get_real(const json& v, const std::string& name) {
  if (!v.is_number()) throw ConfigError(name + " must be a number");
  return v.get<double>();
}

int get_int(const json& v, const std::string& name) {
  if (!v.is_number_integer()) throw ConfigError(name + " must be an integer");
  return v.get<int>();
}

std::vector<double> get_reals(const json& v, const std::string& name) {
  if (!v.is_array()) throw ConfigError(name + " must be an array");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(get_real(x, name + " entry"));
  return out;
}

std::vector<int> get_ints(const json& v, const std::string& name) {
  if (!v.is_array()) throw ConfigError(name + " must be an array");
  std::vector<int> out;
  for (const auto& x : v) out.push_back(get_int(x, name + " entry"));
  return out;
}

void load_config(const std::string& path, Settings& s) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  allow_only(j, {"potential", "alpha", "n", "n_list", "grid", "delta", "quadrature", "szego",
                 "equilibrium", "mcmc", "seed", "out", "cache_dir"},
             "config");
  if (j.contains("potential")) s.potential = get_reals(j["potential"], "potential");
  if (j.contains("alpha")) s.alpha = get_real(j["alpha"], "alpha");
  if (j.contains("n") && j.contains("n_list")) throw ConfigError("give either n or n_list, not both");
  if (j.contains("n")) s.n_list = {get_int(j["n"], "n")};
  if (j.contains("n_list")) s.n_list = get_ints(j["n_list"], "n_list");
  if (j.contains("grid")) s.grid = get_reals(j["grid"], "grid");
  if (j.contains("delta")) s.delta = get_real(j["delta"], "delta");
  if (j.contains("quadrature")) {
    const auto& q = j["quadrature"];
    allow_only(q, {"tail_log10", "initial_nodes", "panels_per_side", "max_refinements", "tolerance"},
               "quadrature");
    if (q.contains("tail_log10")) s.quad.tail_log10 = get_real(q["tail_log10"], "tail_log10");
    if (q.contains("initial_nodes")) s.quad.initial_nodes = get_int(q["initial_nodes"], "initial_nodes");
    if (q.contains("panels_per_side")) s.quad.panels_per_side = get_int(q["panels_per_side"], "panels_per_side");
    if (q.contains("max_refinements")) s.quad.max_refinements = get_int(q["max_refinements"], "max_refinements");
    if (q.contains("tolerance")) s.quad.tolerance = get_real(q["tolerance"], "tolerance");
  }
  if (j.contains("szego")) {
    const auto& z = j["szego"];
    allow_only(z, {"bands", "probes"}, "szego");
    if (z.contains("bands")) {
      if (!z["bands"].is_array()) throw ConfigError("szego.bands must be an array of [lo, hi] pairs");
      s.bands.clear();
      for (const auto& b : z["bands"]) {
        auto v = get_reals(b, "szego.bands entry");
        if (v.size() != 2) throw ConfigError("szego.bands entries must be [lo, hi] pairs");
        s.bands.emplace_back(v[0], v[1]);
      }
    }
    if (z.contains("probes")) s.probes = get_int(z["probes"], "szego.probes");
  }
  if (j.contains("equilibrium")) {
    const auto& e = j["equilibrium"];
    allow_only(e, {"samples"}, "equilibrium");
    if (e.contains("samples")) s.density_samples = get_int(e["samples"], "equilibrium.samples");
  }
  if (j.contains("mcmc")) {
    const auto& m = j["mcmc"];
    allow_only(m, {"n_particles", "sweeps", "burn_in", "proposal_scale", "bins", "chains", "compare_alpha"},
               "mcmc");
    if (m.contains("n_particles")) s.mcmc_particles = get_int(m["n_particles"], "mcmc.n_particles");
    if (m.contains("sweeps")) s.mcmc_sweeps = get_int(m["sweeps"], "mcmc.sweeps");
    if (m.contains("burn_in")) s.mcmc_burn_in = get_int(m["burn_in"], "mcmc.burn_in");
    if (m.contains("proposal_scale")) s.mcmc_proposal = get_real(m["proposal_scale"], "mcmc.proposal_scale");
    if (m.contains("bins")) s.mcmc_bins = get_int(m["bins"], "mcmc.bins");
    if (m.contains("chains")) s.mcmc_chains = get_int(m["chains"], "mcmc.chains");
    if (m.contains("compare_alpha")) s.compare_alpha = get_real(m["compare_alpha"], "mcmc.compare_alpha");
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ConfigError("seed must be a non-negative integer");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("cache_dir")) {
    if (!j["cache_dir"].is_string()) throw ConfigError("cache_dir must be a string");
    s.cache_dir = j["cache_dir"].get<std::string>();
  }
  if (j.contains("out")) {
    if (!j["out"].is_string()) throw ConfigError("out must be a string");
    s.out = j["out"].get<std::string>();
  }
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("--n-list entry '" + tok + "' is not an integer");
    }
  }
  if (out.empty()) throw ConfigError("--n-list is empty");
  return out;
}

void validate_settings(const Settings& s, const std::string& cmd) {
  for (int n : s.n_list) {
    char buf[1024];
    int count = 0;
    check(rmt_validate(s.potential.data(), s.potential.size(), s.alpha, n, buf, sizeof buf, &count),
          "validation");
    if (count > 0) throw ConfigError(buf);
  }
  if (s.n_list.empty()) throw ConfigError("n_list is empty");
  if (s.grid.empty()) throw ConfigError("grid is empty");
  for (double u : s.grid)
    if (!(u > 0.0) || !std::isfinite(u)) throw ConfigError("grid points must be positive and finite");
  if (!(s.delta >= 0.0)) throw ConfigError("delta must be non-negative");
  if (cmd == "szego") {
    if (s.probes < 1) throw ConfigError("szego.probes must be positive");
    double prev = -INFINITY;
    bool has_zero = false;
    for (auto [lo, hi] : s.bands) {
      if (!(lo < hi) || !(lo > prev)) throw ConfigError("szego.bands must be disjoint, increasing intervals");
      if (lo < 0.0 && 0.0 < hi) has_zero = true;
      prev = hi;
    }
    if (!has_zero) throw ConfigError("0 must lie inside one of szego.bands");
  }
  if (cmd == "equilibrium" && s.density_samples < 2) throw ConfigError("equilibrium.samples must be at least 2");
  if (cmd == "mcmc") {
    if (s.mcmc_particles < 1) throw ConfigError("mcmc.n_particles must be positive");
    if (!(s.mcmc_burn_in >= 0 && s.mcmc_sweeps > s.mcmc_burn_in))
      throw ConfigError("mcmc.sweeps must exceed mcmc.burn_in >= 0");
    if (!(s.mcmc_proposal >= 0.0)) throw ConfigError("mcmc.proposal_scale must be non-negative");
    if (s.mcmc_bins < 1) throw ConfigError("mcmc.bins must be positive");
    if (s.mcmc_chains < 1) throw ConfigError("mcmc.chains must be positive");
    if (s.compare_alpha && !(*s.compare_alpha > -0.5))
      throw ConfigError("mcmc.compare_alpha must exceed -1/2");
  }
}

json canonical(const Settings& s, const std::string& cmd) {
  json j;
  j["command"] = cmd;
  j["potential"] = s.potential;
  j["alpha"] = s.alpha;
  j["n_list"] = s.n_list;
  j["grid"] = s.grid;
  j["delta"] = s.delta;
  j["quadrature"] = {{"tail_log10", s.quad.tail_log10},
                     {"initial_nodes", s.quad.initial_nodes},
                     {"panels_per_side", s.quad.panels_per_side},
                     {"max_refinements", s.quad.max_refinements},
                     {"tolerance", s.quad.tolerance}};
  json bands = json::array();
  for (auto [lo, hi] : s.bands) bands.push_back({lo, hi});
  j["szego"] = {{"bands", bands}, {"probes", s.probes}};
  j["equilibrium"] = {{"samples", s.density_samples}};
  j["mcmc"] = {{"n_particles", s.mcmc_particles}, {"sweeps", s.mcmc_sweeps},
               {"burn_in", s.mcmc_burn_in}, {"proposal_scale", s.mcmc_proposal},
               {"bins", s.mcmc_bins}, {"chains", s.mcmc_chains},
               {"compare_alpha", s.compare_alpha ? json(*s.compare_alpha) : json(nullptr)}};
  j["seed"] = s.seed;
  return j;
}

// FNV-1a over the canonical dump; the output directory is not part of it.
std::string config_hash(const json& canon) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : canon.dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------- output

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

class Csv {
 public:
  // stamp is the comment line body: config hash first, then the seed.
  Csv(const fs::path& path, const std::string& stamp, const std::vector<std::string>& header)
      : out_(path) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    out_ << "# " << stamp << '\n';
    row_strings(header);
  }
  void row(const std::vector<double>& v) {
    std::vector<std::string> s;
    for (double x : v) s.push_back(num(x));
    row_strings(s);
  }
  void row_strings(const std::vector<std::string>& v) {
    for (size_t i = 0; i < v.size(); ++i) out_ << (i ? "," : "") << v[i];
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

struct Run {
  Settings s;
  std::string cmd;
  std::string hash;
  fs::path dir;
  ojson metrics = ojson::object();
  ojson thresholds = ojson::object();
  std::vector<std::string> failed;

  std::string stamp() const { return "config_hash=" + hash + " seed=" + std::to_string(s.seed); }
  void metric(const std::string& name, double value) { metrics[name] = value; }
  void metric_json(const std::string& name, const ojson& v) { metrics[name] = v; }
  // Records one threshold test; a non-finite value counts as a failure.
  void require(const std::string& name, bool ok, const std::string& rule) {
    thresholds[name] = {{"rule", rule}, {"pass", ok}};
    if (!ok) failed.push_back(name);
  }
  void write_json(const std::string& file, ojson body) const {
    ojson j;
    j["config_hash"] = hash;
    for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
    std::ofstream(dir / file) << j.dump(2) << '\n';
  }
};

std::string iso_now() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// ---------------------------------------------------------------- commands

struct Equilibrium {
  rmt_equilibrium* h = nullptr;
  explicit Equilibrium(const std::vector<double>& p) {
    check(rmt_equilibrium_create(p.data(), p.size(), &h), "equilibrium");
  }
  ~Equilibrium() { rmt_equilibrium_destroy(h); }
  rmt_equilibrium_info info() const {
    rmt_equilibrium_info i{};
    check(rmt_equilibrium_info_get(h, &i), "equilibrium info");
    return i;
  }
};

void cmd_equilibrium(Run& r) {
  Equilibrium eq(r.s.potential);
  const auto info = eq.info();
  size_t nh = 0;
  check(rmt_equilibrium_h_coeffs(eq.h, nullptr, 0, &nh), "h coefficients");
  std::vector<double> h(nh);
  check(rmt_equilibrium_h_coeffs(eq.h, h.data(), nh, &nh), "h coefficients");

  const double lo = info.left, hi = info.right, w = hi - lo;
  std::vector<double> inside, outside;
  for (int i = 1; i <= 50; ++i) inside.push_back(lo + w * i / 51.0);
  for (int i = 1; i <= 20; ++i) {
    outside.push_back(lo - w * 0.05 * i);
    outside.push_back(hi + w * 0.05 * i);
  }
  rmt_variational_info v{};
  check(rmt_equilibrium_variational(eq.h, inside.data(), inside.size(), outside.data(), outside.size(), &v),
        "variational check");

  {
    Csv c(r.dir / "density.csv", r.stamp(), {"x", "psi", "cdf"});
    const int m = r.s.density_samples;
    for (int i = 0; i < m; ++i) {
      const double x = lo + w * i / (m - 1);
      double p = 0, F = 0;
      check(rmt_equilibrium_density(eq.h, x, &p), "density");
      check(rmt_equilibrium_cdf(eq.h, x, &F), "cdf");
      c.row({x, p, F});
    }
  }
  {
    Csv c(r.dir / "h_chebyshev.csv", r.stamp(), {"k", "h_k"});
    for (size_t k = 0; k < h.size(); ++k) c.row({double(k), h[k]});
  }
  {
    Csv c(r.dir / "variational.csv", r.stamp(), {"quantity", "value"});
    c.row_strings({"max_inside_residual", num(v.max_inside_residual)});
    c.row_strings({"min_outside_margin", num(v.min_outside_margin)});
    c.row_strings({"h_min_on_band", num(v.h_min_on_band)});
    c.row_strings({"singular", v.singular ? "1" : "0"});
  }
  ojson rec;
  rec["left"] = lo;
  rec["right"] = hi;
  rec["ell"] = info.ell;
  rec["psi0"] = info.psi0;
  rec["delta"] = info.delta;
  rec["h_chebyshev"] = h;
  rec["max_inside_residual"] = v.max_inside_residual;
  rec["min_outside_margin"] = v.min_outside_margin;
  r.write_json("equilibrium.json", rec);

  r.metric("left", lo);
  r.metric("right", hi);
  r.metric("psi0", info.psi0);
  r.metric("max_inside_residual", v.max_inside_residual);
  r.metric("min_outside_margin", v.min_outside_margin);
  r.require("max_inside_residual", v.max_inside_residual <= 1e-8, "<= 1e-8");
  r.require("min_outside_margin", v.min_outside_margin > 0.0, "> 0");
  r.require("regular", !v.singular, "not singular");
}

// Recurrence table for (V, alpha, n), read from or written to the cache when enabled.
// Quadrature settings are not part of the cache key.
struct Recurrence {
  rmt_recurrence* h = nullptr;
  Recurrence(const Settings& s, int n) {
    fs::path cached;
    if (!s.cache_dir.empty()) {
      char key[128];
      check(rmt_recurrence_cache_key(s.potential.data(), s.potential.size(), s.alpha, n, n, key, sizeof key),
            "cache key");
      cached = fs::path(s.cache_dir) / (std::string(key) + ".json");
      std::ifstream in(cached);
      if (in) {
        std::stringstream text;
        text << in.rdbuf();
        if (rmt_recurrence_parse(text.str().c_str(), &h) == RMT_OK) return;
        std::cerr << "ignoring unreadable cache entry " << cached << '\n';
      }
    }
    check(rmt_recurrence_create(s.potential.data(), s.potential.size(), s.alpha, n, n, &s.quad, &h),
          "recurrence");
    if (!cached.empty()) {
      size_t len = 0;
      check(rmt_recurrence_serialize(h, nullptr, 0, &len), "serialize");
      std::string buf(len + 1, '\0');
      check(rmt_recurrence_serialize(h, buf.data(), buf.size(), &len), "serialize");
      buf.resize(len);
      std::error_code ec;
      fs::create_directories(cached.parent_path(), ec);
      std::ofstream(cached) << buf;
    }
  }
  ~Recurrence() { rmt_recurrence_destroy(h); }
  Recurrence(const Recurrence&) = delete;
  Recurrence& operator=(const Recurrence&) = delete;
};

void write_kernel_table(const Run& r, const Equilibrium& eq, int n, const fs::path& path) {
  Recurrence t(r.s, n);
  Csv c(path, r.stamp(), {"u", "v", "khat", "limit", "abs_err", "weighted_err"});
  for (double u : r.s.grid)
    for (double v : r.s.grid) {
      double kh = 0, lim = 0;
      check(rmt_rescaled_kernel(t.h, eq.h, u, v, &kh), "rescaled kernel");
      check(rmt_limit_kernel(0, r.s.alpha, u, v, &lim), "limit kernel");
      const double e = std::fabs(kh - lim);
      c.row({u, v, kh, lim, e, e / std::pow(u * v, r.s.alpha)});
    }
}

void cmd_universality(Run& r) {
  const auto& s = r.s;
  Equilibrium eq(s.potential);
  const size_t m = s.n_list.size();
  std::vector<double> we(m), ue(m);
  double slope = 0, slope_u = 0;
  check(rmt_universality_sweep(s.potential.data(), s.potential.size(), s.alpha, s.n_list.data(), m,
                               s.grid.data(), s.grid.size(), &s.quad, we.data(), ue.data(), &slope, &slope_u),
        "universality sweep");
  {
    Csv c(r.dir / "errors.csv", r.stamp(), {"n", "weighted_error", "unweighted_error"});
    for (size_t i = 0; i < m; ++i) c.row({double(s.n_list[i]), we[i], ue[i]});
  }
  for (int n : s.n_list) write_kernel_table(r, eq, n, r.dir / ("kernel_n" + std::to_string(n) + ".csv"));

  bool decreasing = true;
  for (size_t i = 1; i < m; ++i) decreasing = decreasing && we[i] < we[i - 1];
  r.metric("slope", slope);
  r.metric("slope_unweighted", slope_u);
  r.metric_json("weighted_error", we);
  r.metric_json("strictly_decreasing", decreasing);
  r.require("strictly_decreasing", decreasing, "E(n) strictly decreasing in n");
  if (m >= 2) r.require("slope", slope >= -1.3 && slope <= -0.7, "in [-1.3, -0.7]");
}

void cmd_kernel_table(Run& r) {
  Equilibrium eq(r.s.potential);
  for (int n : r.s.n_list) write_kernel_table(r, eq, n, r.dir / ("kernel_n" + std::to_string(n) + ".csv"));
  r.metric_json("tables", r.s.n_list);
}

void cmd_szego(Run& r) {
  const auto& s = r.s;
  std::vector<double> edges;
  for (auto [lo, hi] : s.bands) {
    edges.push_back(lo);
    edges.push_back(hi);
  }
  rmt_szego* sd = nullptr;
  check(rmt_szego_create(edges.data(), edges.size(), s.alpha, &sd), "szego");
  std::unique_ptr<rmt_szego, void (*)(rmt_szego*)> guard(sd, rmt_szego_destroy);

  size_t nxi = 0;
  check(rmt_szego_xi(sd, nullptr, 0, &nxi), "xi");
  std::vector<double> xi(nxi);
  check(rmt_szego_xi(sd, xi.data(), nxi, &nxi), "xi");
  rmt_szego_report rep{};
  check(rmt_szego_check(sd, s.probes, &rep), "szego check");

  {
    Csv c(r.dir / "xi.csv", r.stamp(), {"gap", "xi"});
    for (size_t j = 0; j < xi.size(); ++j) c.row({double(j + 1), xi[j]});
  }
  {
    // Boundary values of D on each band, away from the endpoints and 0.
    Csv c(r.dir / "boundary.csv", r.stamp(), {"x", "re_dplus", "im_dplus", "abs_dplus_dminus", "abs_x_2alpha"});
    for (auto [lo, hi] : s.bands)
      for (int i = 1; i < 40; ++i) {
        const double x = lo + (hi - lo) * i / 40.0;
        if (std::fabs(x) < 1e-3) continue;
        double pr, pi, mr, mi;
        check(rmt_szego_D(sd, x, 0.0, 1, &pr, &pi), "D+");
        check(rmt_szego_D(sd, x, 0.0, -1, &mr, &mi), "D-");
        const double prod = std::abs(std::complex<double>(pr, pi) * std::complex<double>(mr, mi));
        c.row({x, pr, pi, prod, std::pow(std::fabs(x), 2 * s.alpha)});
      }
  }
  {
    Csv c(r.dir / "origin_probe.csv", r.stamp(), {"m", "abs_z_minus_alpha_D"});
    for (int m = 4; m <= 20; ++m) {
      const double t = std::ldexp(1.0, -m);
      const std::complex<double> z = t * std::complex<double>(1, 1) / std::sqrt(2.0);
      double dr, di;
      check(rmt_szego_D(sd, z.real(), z.imag(), 0, &dr, &di), "D near 0");
      c.row({double(m), std::abs(std::complex<double>(dr, di) * std::pow(z, -s.alpha))});
    }
  }
  r.metric_json("xi", xi);
  r.metric("max_band_jump", rep.max_band_jump);
  r.metric("max_gap_phase", rep.max_gap_phase);
  r.metric("system_residual", rep.system_residual);
  r.metric("cond_a", rep.cond_a);
  r.metric("bound_ratio_lower", rep.bound_ratio_lower);
  r.metric("bound_ratio_upper", rep.bound_ratio_upper);
  r.metric_json("d_infinity", {rep.d_inf_closed_re, rep.d_inf_closed_im});
  r.metric_json("d_infinity_numeric", {rep.d_inf_numeric_re, rep.d_inf_numeric_im});
  r.require("max_band_jump", rep.max_band_jump <= 1e-8, "<= 1e-8");
  r.require("max_gap_phase", rep.max_gap_phase <= 1e-8, "<= 1e-8");
  r.require("system_residual", rep.system_residual <= 1e-10, "<= 1e-10");
  r.require("bound_ratio", rep.bound_ratio_lower <= 2.0 && rep.bound_ratio_upper <= 2.0 && !rep.growth_trend,
            "variation <= 2 with no growth trend");
}

void cmd_parametrix(Run& r) {
  const auto& s = r.s;
  double max_jump = 0, max_cyclic = 0, max_det = 0;
  {
    Csv c(r.dir / "psi_checks.csv", r.stamp(), {"ray", "radius", "jump_residual", "cyclic_residual", "det_error"});
    for (double rad : {0.5, 5.0})
      for (int ray = 1; ray <= 8; ++ray) {
        double jr = 0, cr = 0, m[8];
        check(rmt_psi_jump_residual(s.alpha, rad, ray, &jr), "psi jump");
        // Sector midpoint between this ray and the next.
        const double th = (ray - 0.5) * M_PI / 4.0;
        check(rmt_psi_cyclic_residual(s.alpha, rad * std::cos(th), rad * std::sin(th), &cr), "psi cyclic");
        check(rmt_psi_model(s.alpha, rad * std::cos(th), rad * std::sin(th), m), "psi");
        const std::complex<double> a(m[0], m[1]), b(m[2], m[3]), cc(m[4], m[5]), d(m[6], m[7]);
        const double de = std::abs(a * d - b * cc - 1.0);
        c.row({double(ray), rad, jr, cr, de});
        max_jump = std::max(max_jump, jr);
        max_cyclic = std::max(max_cyclic, cr);
        max_det = std::max(max_det, de);
      }
  }
  Equilibrium eq(s.potential);
  const size_t m = s.n_list.size();
  std::vector<double> res(m);
  size_t np = 0;
  double slope = 0;
  check(rmt_matching(eq.h, s.alpha, s.n_list.data(), m, s.delta, res.data(), nullptr, 0, &np, &slope),
        "matching");
  std::vector<double> pts(m * np);
  check(rmt_matching(eq.h, s.alpha, s.n_list.data(), m, s.delta, res.data(), pts.data(), np, &np, &slope),
        "matching");
  {
    std::vector<std::string> head{"n", "max_residual"};
    for (size_t k = 0; k < np; ++k) head.push_back("p" + std::to_string(k));
    Csv c(r.dir / "decay.csv", r.stamp(), head);
    for (size_t i = 0; i < m; ++i) {
      std::vector<double> row{double(s.n_list[i]), res[i]};
      row.insert(row.end(), pts.begin() + i * np, pts.begin() + (i + 1) * np);
      c.row(row);
    }
  }
  r.metric("max_jump_residual", max_jump);
  r.metric("max_cyclic_residual", max_cyclic);
  r.metric("max_det_error", max_det);
  r.metric_json("max_residual", res);
  r.metric("slope", slope);
  r.require("jump_residual", max_jump <= 1e-10, "<= 1e-10");
  r.require("cyclic_residual", max_cyclic <= 1e-10, "<= 1e-10");
  r.require("det_error", max_det <= 1e-10, "<= 1e-10");
  auto i32 = std::find(s.n_list.begin(), s.n_list.end(), 32);
  auto i64 = std::find(s.n_list.begin(), s.n_list.end(), 64);
  if (i32 != s.n_list.end() && i64 != s.n_list.end()) {
    const double ratio = res[i32 - s.n_list.begin()] / res[i64 - s.n_list.begin()];
    r.metric("ratio_32_64", ratio);
    r.require("ratio_32_64", ratio >= 1.5 && ratio <= 2.6, "in [1.5, 2.6]");
  } else if (m >= 2) {
    r.require("slope", slope >= -1.3 && slope <= -0.7, "in [-1.3, -0.7]");
  }
}

struct ChainSet {
  std::vector<rmt_mcmc_summary> runs;
  std::vector<double> edges;
  std::vector<long long> pooled;
};

// Chains with seeds seed, seed + 1, ... run concurrently and are collected in seed order.
ChainSet run_chains(const Settings& s, double alpha) {
  struct One {
    rmt_mcmc_summary sum{};
    std::vector<double> edges;
    std::vector<long long> counts;
  };
  std::vector<std::future<One>> jobs;
  for (int c = 0; c < s.mcmc_chains; ++c)
    jobs.push_back(std::async(std::launch::async, [&s, alpha, c] {
      One o;
      o.edges.resize(s.mcmc_bins + 1);
      o.counts.resize(s.mcmc_bins);
      rmt_mcmc_config cfg{s.mcmc_particles, s.mcmc_sweeps, s.mcmc_burn_in, s.mcmc_proposal,
                          s.seed + static_cast<std::uint64_t>(c), s.mcmc_bins};
      check(rmt_mcmc_run(s.potential.data(), s.potential.size(), alpha, &cfg, &o.sum, o.edges.data(),
                         o.counts.data()),
            "mcmc");
      return o;
    }));
  ChainSet out;
  out.pooled.assign(s.mcmc_bins, 0);
  for (auto& j : jobs) {
    One o = j.get();
    out.runs.push_back(o.sum);
    out.edges = o.edges;
    for (int b = 0; b < s.mcmc_bins; ++b) out.pooled[b] += o.counts[b];
  }
  return out;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t k = v.size() / 2;
  return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

double zero_mass(const ChainSet& cs) {
  double s = 0;
  for (const auto& r : cs.runs) s += r.zero_bin_mass;
  return s / cs.runs.size();
}

void write_histogram(const Run& r, const ChainSet& cs, const std::string& file) {
  long long total = 0;
  for (auto c : cs.pooled) total += c;
  Csv c(r.dir / file, r.stamp(), {"bin_left", "bin_right", "density"});
  for (size_t b = 0; b + 1 < cs.edges.size(); ++b) {
    const double w = cs.edges[b + 1] - cs.edges[b];
    c.row({cs.edges[b], cs.edges[b + 1], total ? cs.pooled[b] / (total * w) : 0.0});
  }
}

void cmd_mcmc(Run& r) {
  const auto& s = r.s;
  Csv chains(r.dir / "chains.csv", r.stamp(),
             {"alpha", "seed", "ks_distance", "acceptance_rate", "zero_bin_mass", "proposal_scale", "mistuned"});
  auto add = [&](double alpha, const ChainSet& cs) {
    for (size_t i = 0; i < cs.runs.size(); ++i) {
      const auto& x = cs.runs[i];
      chains.row_strings({num(alpha), std::to_string(s.seed + i), num(x.ks_distance), num(x.acceptance_rate),
                          num(x.zero_bin_mass), num(x.proposal_scale), x.mistuned ? "1" : "0"});
    }
  };
  const ChainSet base = run_chains(s, s.alpha);
  add(s.alpha, base);
  write_histogram(r, base, "histogram.csv");
  std::vector<double> ks;
  for (const auto& x : base.runs) ks.push_back(x.ks_distance);
  const double med = median(ks);
  r.metric_json("seed", s.seed);
  r.metric("median_ks", med);
  r.metric("zero_bin_mass", zero_mass(base));
  r.require("median_ks", med <= 0.05, "<= 0.05");
  if (s.compare_alpha) {
    const ChainSet other = run_chains(s, *s.compare_alpha);
    add(*s.compare_alpha, other);
    write_histogram(r, other, "histogram_compare.csv");
    const double depletion = 1.0 - zero_mass(other) / zero_mass(base);
    r.metric("compare_alpha", *s.compare_alpha);
    r.metric("compare_zero_bin_mass", zero_mass(other));
    r.metric("depletion", depletion);
    if (*s.compare_alpha > s.alpha) r.require("depletion", depletion >= 0.2, ">= 0.2");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rmtlab: Bessel-kernel universality at the origin"};
  app.require_subcommand(1);
  std::string config_path, out_dir, n_list;
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha;
  const char* names[] = {"equilibrium", "universality", "szego", "parametrix", "mcmc", "kernel-table"};
  const char* about[] = {"equilibrium measure, density and variational check",
                         "kernel convergence sweep over n",
                         "Szego function and gap phases on a multi-band support",
                         "model problem checks and matching decay",
                         "Metropolis sampling of the eigenvalue density",
                         "rescaled kernel tables"};
  for (int i = 0; i < 6; ++i) {
    auto* sub = app.add_subcommand(names[i], about[i]);
    sub->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "random seed");
    sub->add_option("--n-list", n_list, "comma-separated n values");
    sub->add_option("--alpha", alpha, "exponent alpha > -1/2");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfigInvalid;
  }
  Run r;
  r.cmd = app.get_subcommands().front()->get_name();
  const auto start = iso_now();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (!config_path.empty()) load_config(config_path, r.s);
    if (seed) r.s.seed = *seed;
    if (alpha) r.s.alpha = *alpha;
    if (!n_list.empty()) r.s.n_list = parse_int_list(n_list);
    if (!out_dir.empty()) r.s.out = out_dir;
    validate_settings(r.s, r.cmd);
  } catch (const ConfigError& e) {
    std::cerr << "config invalid: " << e.what() << '\n';
    return kConfigInvalid;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  }
  const json canon = canonical(r.s, r.cmd);
  r.hash = config_hash(canon);
  r.dir = r.s.out;
  std::error_code ec;
  fs::create_directories(r.dir, ec);
  if (ec) {
    std::cerr << "cannot create output directory " << r.dir << ": " << ec.message() << '\n';
    return kConfigInvalid;
  }

  int code = kPass;
  std::string error;
  try {
    if (r.cmd == "equilibrium") cmd_equilibrium(r);
    else if (r.cmd == "universality") cmd_universality(r);
    else if (r.cmd == "szego") cmd_szego(r);
    else if (r.cmd == "parametrix") cmd_parametrix(r);
    else if (r.cmd == "mcmc") cmd_mcmc(r);
    else cmd_kernel_table(r);
    if (!r.failed.empty()) code = kThresholdFail;
  } catch (const ConfigError& e) {
    error = e.what();
    code = kConfigInvalid;
  } catch (const std::exception& e) {
    error = e.what();
    code = kNumericFailure;
  }

  ojson summary;
  summary["command"] = r.cmd;
  summary["pass"] = code == kPass;
  summary["exit_code"] = code;
  summary["failed"] = r.failed;
  if (!error.empty()) summary["error"] = error;
  summary["metrics"] = r.metrics;
  summary["thresholds"] = r.thresholds;
  summary["config"] = canon;
  r.write_json("summary.json", summary);

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ojson meta;
  meta["command"] = r.cmd;
  meta["started"] = start;
  meta["finished"] = iso_now();
  meta["elapsed_seconds"] = secs;
  meta["library_version"] = rmt_version();
  r.write_json("metadata.json", meta);

  if (code == kConfigInvalid) std::cerr << "config invalid: " << error << '\n';
  if (code == kNumericFailure) std::cerr << "numeric failure: " << error << '\n';
  for (const auto& f : r.failed) std::cerr << "threshold failed: " << f << '\n';
  std::cout << r.cmd << ": " << (code == kPass ? "PASS" : "FAIL") << " (" << r.dir.string() << ")\n";
  return code;
}
