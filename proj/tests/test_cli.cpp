#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("rmtlab_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

int run(const std::string& args, std::string* err = nullptr) {
  fs::path errfile = fs::temp_directory_path() / "rmtlab_cli_test_stderr.txt";
  std::string cmd = std::string(RMTLAB_CLI) + " " + args + " >/dev/null 2>" + errfile.string();
  int status = std::system(cmd.c_str());
  if (err) {
    std::ifstream in(errfile);
    std::stringstream ss;
    ss << in.rdbuf();
    *err = ss.str();
  }
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_config(const std::string& name, const std::string& body) {
  fs::path p = fs::temp_directory_path() / ("rmtlab_cli_test_" + name + ".json");
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_CASE("equilibrium command writes endpoints and creates the directory") {
  auto out = scratch("eq") / "nested" / "dir";
  CHECK(run("equilibrium --out " + out.string()) == 0);
  REQUIRE(fs::exists(out / "equilibrium.json"));
  auto j = nlohmann::json::parse(slurp(out / "equilibrium.json"));
  CHECK(std::fabs(j["left"].get<double>() + 1.41421356) < 1e-6);
  CHECK(std::fabs(j["right"].get<double>() - 1.41421356) < 1e-6);
  for (auto& f : fs::directory_iterator(out))
    if (f.path().extension() == ".csv") CHECK(slurp(f.path()).rfind("# config_hash=", 0) == 0);
  CHECK(fs::exists(out / "metadata.json"));
}

TEST_CASE("invalid alpha exits 2 naming the bound") {
  std::string err;
  CHECK(run("equilibrium --alpha -0.5 --out " + scratch("bad").string(), &err) == 2);
  CHECK(err.find("-1/2") != std::string::npos);
}

TEST_CASE("unknown config keys are rejected") {
  auto cfg = write_config("unknown", R"({"alpha": 0.5, "mcmc": {"sweep": 10}})");
  std::string err;
  CHECK(run("mcmc --config " + cfg.string() + " --out " + scratch("unk").string(), &err) == 2);
  CHECK(err.find("sweep") != std::string::npos);
  auto bad = write_config("badjson", "{ not json");
  CHECK(run("szego --config " + bad.string() + " --out " + scratch("bj").string()) == 2);
}

TEST_CASE("universality summary carries slope and pass flag") {
  auto out = scratch("univ");
  const int code = run("universality --out " + out.string());
  CHECK((code == 0 || code == 1));
  auto s = nlohmann::json::parse(slurp(out / "summary.json"));
  CHECK(s["metrics"].contains("slope"));
  CHECK(s.contains("pass"));
  CHECK(s["pass"].get<bool>() == (code == 0));
}

TEST_CASE("identity Szego configuration passes") {
  auto cfg = write_config("szego0", R"({"alpha": 0, "szego": {"bands": [[-1.0, 2.0]]}})");
  auto out = scratch("szego0");
  CHECK(run("szego --config " + cfg.string() + " --out " + out.string()) == 0);
  auto s = nlohmann::json::parse(slurp(out / "summary.json"));
  CHECK(s["metrics"]["max_band_jump"].get<double>() <= 1e-12);
  CHECK(s["metrics"]["max_gap_phase"].get<double>() <= 1e-12);
}

TEST_CASE("parametrix decay table has one row per n") {
  auto out = scratch("par");
  const int code = run("parametrix --alpha 1 --n-list 8,16,32,64 --out " + out.string());
  CHECK(code == 0);
  std::istringstream in(slurp(out / "decay.csv"));
  std::string line;
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') ++rows;
  CHECK(rows == 5);  // header plus four rows
}

TEST_CASE("recurrence cache reproduces kernel tables") {
  auto cache = scratch("cache");
  auto cfg = write_config("cache", "{\"alpha\": 0.5, \"n_list\": [8, 16], \"cache_dir\": \"" + cache.string() + "\"}");
  auto a = scratch("cache_a"), b = scratch("cache_b");
  CHECK(run("kernel-table --config " + cfg.string() + " --out " + a.string()) == 0);
  int entries = 0;
  for (auto& f : fs::directory_iterator(cache)) entries += f.path().extension() == ".json";
  CHECK(entries == 2);
  CHECK(run("kernel-table --config " + cfg.string() + " --out " + b.string()) == 0);
  CHECK(slurp(a / "kernel_n16.csv") == slurp(b / "kernel_n16.csv"));
  CHECK(slurp(a / "kernel_n8.csv").find("seed=1") != std::string::npos);
}
