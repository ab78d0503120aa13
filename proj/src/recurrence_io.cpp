#include "rmt/recurrence_io.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace rmt {

namespace {

constexpr int kFormat = 1;

}  // namespace

std::string serialize_recurrence(const RecurrenceTable& t) {
  nlohmann::ordered_json j;
  j["format"] = kFormat;
  j["potential"] = t.potential.coeffs;
  j["alpha"] = t.ensemble.alpha;
  j["n"] = t.ensemble.n;
  j["degree"] = t.degree();
  j["log_mu0"] = t.log_mu0;
  j["d"] = t.diag;
  j["c"] = t.offdiag;
  return j.dump();
}

RecurrenceTable parse_recurrence(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::invalid_argument, std::string("recurrence record is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<int>() != kFormat) fail(ErrorCode::unsupported, "unknown recurrence record format");
    RecurrenceTable t;
    t.potential.coeffs = j.at("potential").get<std::vector<double>>();
    t.ensemble.alpha = j.at("alpha").get<double>();
    t.ensemble.n = j.at("n").get<int>();
    t.log_mu0 = j.at("log_mu0").get<double>();
    t.diag = j.at("d").get<std::vector<double>>();
    t.offdiag = j.at("c").get<std::vector<double>>();
    const int k = j.at("degree").get<int>();
    if (static_cast<int>(t.diag.size()) != k || t.offdiag.size() < t.diag.size())
      fail(ErrorCode::invalid_argument, "recurrence record has inconsistent lengths");
    for (double c : t.offdiag)
      if (!(c > 0.0)) fail(ErrorCode::invalid_argument, "recurrence record has a non-positive c_k");
    return t;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::invalid_argument, std::string("recurrence record is malformed: ") + e.what());
  }
}

std::string recurrence_cache_key(const Potential& p, const EnsembleParams& e, int degree) {
  // FNV-1a over the exact bit patterns.
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* b = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= b[i];
      h *= 1099511628211ULL;
    }
  };
  for (double c : p.coeffs) mix(&c, sizeof c);
  mix(&e.alpha, sizeof e.alpha);
  mix(&e.n, sizeof e.n);
  mix(&degree, sizeof degree);
  char buf[64];
  std::snprintf(buf, sizeof buf, "rec_n%d_k%d_%016llx", e.n, degree, static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace rmt
