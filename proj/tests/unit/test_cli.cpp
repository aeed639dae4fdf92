#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "hdw/cli/config_io.hpp"
#include "hdw/cli/plots.hpp"
#include "hdw/common/errors.hpp"

using namespace hdw;
using namespace hdw::cli;

namespace {

std::string error_of(const std::string& text, const std::vector<std::string>& overrides = {}) {
  try {
    parse_config(text, overrides);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("empty config is the full-scale default") {
  const auto c = parse_config("");
  CHECK(c == default_config());
  CHECK(c.scenario.grid_h == 10);
  CHECK(c.scenario.uav_count == 6);
  CHECK(c.scenario.user_count == 50);
  CHECK(c.scenario.energy_budget == 250e3);
  CHECK(c.scenario.prop_power == 497.25);
  CHECK(c.scenario.rho_cov == 0.8);
  CHECK(c.scenario.rho_comm == 0.98);
  CHECK(c.dqn.gamma == 0.9);
  CHECK(c.dqn.replay_capacity == 8000);
  CHECK(c.dqn.batch_size == 64);
  CHECK(c.dqn.target_period == 5);
  CHECK(c.weighting.temperature == 0.5);
  CHECK(c.weighting.ema == 0.25);
  CHECK(c.experiment.episodes == 300);
}

TEST_CASE("overrides touch only their keys") {
  const auto d = default_config();
  auto c = parse_config("[scenario]\ngrid_h = 6\ngrid_w = 6\n");
  CHECK(c.scenario.grid_h == 6);
  CHECK(c.scenario.grid_w == 6);
  c.scenario.grid_h = d.scenario.grid_h;
  c.scenario.grid_w = d.scenario.grid_w;
  CHECK(c == d);

  const auto o = parse_config("[dqn]\ngamma = 0.9\n", {"dqn.gamma=0.8", "experiment.seeds=3,1,2"});
  CHECK(o.dqn.gamma == 0.8);
  CHECK(o.experiment.seeds == std::vector<std::uint64_t>{3, 1, 2});
  const auto v = parse_config("[experiment]\nvariant = NoSWS\n[dqn]\ntarget_mode = scalarized_greedy\n");
  CHECK(v.experiment.variant == harness::Variant::NoSWS);
  CHECK(v.dqn.target_mode == agent::TargetMode::ScalarizedGreedy);
}

TEST_CASE("bad configs are rejected with the key name") {
  CHECK(error_of("[scenario]\nrho_cov = 1.5\n").find("rho_cov") != std::string::npos);
  CHECK(error_of("[scenario]\nwidth = 3\n").find("scenario.width: unknown key") != std::string::npos);
  CHECK(error_of("[dqn]\nbatch_size = many\n").find("dqn.batch_size: expected") != std::string::npos);
  CHECK(error_of("[experiment]\nvariant = Best\n").find("experiment.variant") != std::string::npos);
  CHECK(error_of("grid_h = 3\n") != "");
  CHECK(error_of("", {"scenario.grid_h"}) != "");
  CHECK(error_of("", {"nope.key=1"}).find("unknown key") != std::string::npos);
  CHECK(error_of("[scenario]\ngrid_h = 0\n").find("grid_h") != std::string::npos);
}

TEST_CASE("resolved config round-trips") {
  auto c = parse_config("[weighting]\nstatic_cov = 0.3\nema = 0.123456789012345\n[mobility]\nmemory = 0.7\n");
  const auto text = to_ini(c);
  CHECK(parse_config(text) == c);
  CHECK(config_hash(parse_config(text)) == config_hash(c));
  CHECK(config_hash(c) != config_hash(default_config()));
  for (const auto& key : config_keys()) CHECK(text.find(key.substr(key.find('.') + 1)) != std::string::npos);
}

TEST_CASE("config files") {
  const auto dir = std::filesystem::temp_directory_path() / "hdw_cli_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "a.ini") << "; comment\n[scenario]\nuav_count = 2\n";
  }
  CHECK(load_config(dir / "a.ini").scenario.uav_count == 2);
  CHECK(load_config("").scenario.uav_count == 6);
  CHECK_THROWS_AS(load_config(dir / "missing.ini"), ConfigError);

  // A malformed metrics file surfaces as FormatError from export-plots.
  {
    std::ofstream(dir / "metrics.csv") << "# hdwdrl-metrics v1\nnot,a,header\n";
  }
  CHECK_THROWS_AS(export_plots(dir / "metrics.csv", dir / "plots", {}), FormatError);
  std::filesystem::remove_all(dir);
}
