#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "aggrnet/config.hpp"
#include "aggrnet/scenarios.hpp"
#include "doctest.h"

using namespace aggrnet;
namespace fs = std::filesystem;

namespace {

const char* kValidConfig = R"(# example experiment
[network]
m1 = 1
m2 = 1
t = 0.2
alpha = 0.8

[channel]
gamma = 1.2
eta = 0

[sweep]
parameter = t
values = 0.1, 0.2
analysis = throughput, stability

[sim]
slots = 20000
seed = 9
replications = 1
)";

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("aggrnet_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("config parsing: values propagate, defaults applied") {
  const ExperimentSpec spec = parse_config_text(kValidConfig);
  CHECK(spec.network.m1 == 1);
  CHECK(spec.network.t1 == doctest::Approx(0.2));
  CHECK(spec.network.t2 == doctest::Approx(0.2));
  CHECK(spec.network.alpha1 == doctest::Approx(0.8));
  CHECK(spec.network.channel.sinr_threshold == doctest::Approx(1.2));
  CHECK(spec.network.channel.noise_power == 0.0);
  CHECK(spec.sim.slots == 20000);
  CHECK(spec.sim.seed == 9);
  REQUIRE(spec.sweep.size() == 1);
  CHECK(spec.sweep[0].parameter == "t");
  REQUIRE(spec.sweep[0].values.size() == 2);
  CHECK(spec.analyses.count(Analysis::kThroughput) == 1);
  CHECK(spec.analyses.count(Analysis::kStability) == 1);
  CHECK(spec.analyses.count(Analysis::kDelayBvp) == 0);
  // Defaults are echoed into the resolved view.
  CHECK(spec.resolved.count("network.m1") == 1);
  CHECK(spec.resolved.count("sim.slots") == 1);
}

TEST_CASE("config parsing: errors carry line context") {
  CHECK_THROWS_AS(parse_config_text("[network]\nbogus_key = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[network]\nt = not_a_number\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config_text("[unknown_section]\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[network]\nno equals sign here\n"),
                  ConfigError);
  try {
    parse_config_text("[network]\nt = oops\n", "myfile.ini");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("myfile.ini") != std::string::npos);
    CHECK(msg.find("2") != std::string::npos);  // line number
  }
}

TEST_CASE("config hash: stable and value-sensitive") {
  const ExperimentSpec a = parse_config_text(kValidConfig);
  const ExperimentSpec b = parse_config_text(kValidConfig);
  CHECK(config_hash(a) == config_hash(b));
  std::string modified(kValidConfig);
  const auto pos = modified.find("gamma = 1.2");
  modified.replace(pos, 11, "gamma = 2.0");
  CHECK(config_hash(parse_config_text(modified)) != config_hash(a));
}

TEST_CASE("apply_parameter covers the sweepable axes") {
  NetworkConfig cfg;
  apply_parameter(&cfg, "t", 0.33);
  CHECK(cfg.t1 == doctest::Approx(0.33));
  CHECK(cfg.t2 == doctest::Approx(0.33));
  apply_parameter(&cfg, "alpha", 0.5);
  CHECK(cfg.alpha1 == doctest::Approx(0.5));
  apply_parameter(&cfg, "gamma", 2.0);
  CHECK(cfg.channel.sinr_threshold == doctest::Approx(2.0));
  apply_parameter(&cfg, "eta", 1e-11);
  CHECK(cfg.channel.noise_power == doctest::Approx(1e-11));
  apply_parameter(&cfg, "m", 4.0);
  CHECK(cfg.m1 == 4);
  CHECK(cfg.m2 == 4);
  CHECK_THROWS_AS(apply_parameter(&cfg, "nope", 1.0), ConfigError);
}

TEST_CASE("generic sweep: CSV artifact with provenance, reruns identical") {
  ExperimentSpec spec = parse_config_text(kValidConfig);
  const fs::path dir = fresh_dir("sweep");
  spec.out_dir = dir.string();
  const std::vector<std::string> files = run_experiment(spec);
  REQUIRE(files.size() == 1);
  const std::string first = read_file(files[0]);
  CHECK(first.find("# config_hash=" + config_hash(spec)) != std::string::npos);
  CHECK(first.find("lambda1") != std::string::npos);
  // 2 sweep values -> header comments + column row + 2 data rows.
  // Re-running must produce byte-identical output.
  run_experiment(spec);
  CHECK(read_file(files[0]) == first);
}

TEST_CASE("built-in table1 scenario emits one row per (gamma, t, M)") {
  ExperimentSpec spec = parse_config_text(
      "[network]\nm1 = 1\nm2 = 1\n[channel]\ngamma = 1.2\neta = 1e-11\n"
      "[sweep]\nscenario = table1\n");
  const fs::path dir = fresh_dir("table1");
  spec.out_dir = dir.string();
  const std::vector<std::string> files = run_experiment(spec, 2);
  REQUIRE(files.size() == 1);
  const std::string text = read_file(files[0]);
  int rows = 0;
  for (char ch : text)
    if (ch == '\n') ++rows;
  // 8 (gamma, t) combinations x 30 M values + header lines.
  CHECK(rows > 8 * 30);
  CHECK(text.find("gamma,t,M,stable") != std::string::npos);
}

#ifdef AGGRNET_CLI_PATH
TEST_CASE("CLI binary: exit codes and self-check") {
  const std::string cli = AGGRNET_CLI_PATH;
  REQUIRE(fs::exists(cli));
  CHECK(std::system((cli + " check > /dev/null").c_str()) == 0);

  const fs::path dir = fresh_dir("cli");
  const fs::path good = dir / "good.ini";
  std::ofstream(good) << kValidConfig;
  const std::string run_cmd =
      cli + " run " + good.string() + " --out " + dir.string() + " > /dev/null";
  CHECK(std::system(run_cmd.c_str()) == 0);

  const fs::path bad = dir / "bad.ini";
  std::ofstream(bad) << "[network]\nt = 7.5\n";  // t out of range
  const int rc =
      std::system((cli + " run " + bad.string() + " 2> /dev/null").c_str());
  CHECK(WEXITSTATUS(rc) == 2);

  const int rc_missing =
      std::system((cli + " run /nonexistent.ini 2> /dev/null").c_str());
  CHECK(WEXITSTATUS(rc_missing) == 2);
}
#endif
