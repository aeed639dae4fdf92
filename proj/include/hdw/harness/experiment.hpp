#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hdw/agent/dqn_config.hpp"
#include "hdw/env/scenario_config.hpp"
#include "hdw/harness/variant.hpp"
#include "hdw/weighting/weighting_config.hpp"

namespace hdw::harness {

struct ExperimentConfig {
  Variant variant = Variant::HDWDRL;
  int episodes = 300;
  std::vector<std::uint64_t> seeds{1};
  int eval_interval = 10;  // training episodes between greedy evaluations
  int eval_episodes = 3;
  bool audit_constraints = true;
  bool save_checkpoints = true;
  bool write_trace = false;  // per-slot JSON lines of evaluation episodes

  bool operator==(const ExperimentConfig&) const = default;
};

/// Everything needed to reproduce a run.
struct Config {
  env::ScenarioConfig scenario;
  agent::DqnConfig dqn;
  weighting::WeightingConfig weighting;
  ExperimentConfig experiment;

  bool operator==(const Config&) const = default;
};

/// Throws ConfigError naming the offending key.
void validate(const Config& cfg);

}  // namespace hdw::harness
