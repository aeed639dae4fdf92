#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <vector>

#include "hdw/harness/episode_runner.hpp"

namespace hdw::harness {

struct RunLog {
  std::uint64_t seed = 0;
  Variant variant = Variant::HDWDRL;
  std::vector<EpisodeStats> train;
  std::vector<EpisodeStats> eval;  // k = training episode after which it ran
};

struct RunHooks {
  /// Called after every episode; eval is true for greedy evaluation episodes.
  std::function<void(const RunLog&, const EpisodeStats&, bool eval)> on_episode;
  std::ostream* trace = nullptr;  // JSON lines of evaluation episodes
};

/// Scenario for the k-th training or j-th evaluation episode of a run. The
/// evaluation scenarios are the same at every checkpoint and for every variant.
env::ScenarioConfig episode_scenario(const env::ScenarioConfig& base, std::uint64_t run_seed,
                                     int index, bool eval);

/// Greedy episodes with frozen parameters.
std::vector<EpisodeStats> evaluate(const Config& cfg, Variant variant, Learners& learners,
                                   std::uint64_t run_seed, int count, int k,
                                   std::ostream* trace = nullptr);

/// One full training run (all episodes of one seed) with periodic evaluation.
RunLog train_run(const Config& cfg, Variant variant, std::uint64_t seed, Learners& learners,
                 const RunHooks& hooks = {});
RunLog train_run(const Config& cfg, Variant variant, std::uint64_t seed,
                 const RunHooks& hooks = {});

/// Runs every seed of cfg.experiment sequentially for cfg.experiment.variant.
std::vector<RunLog> train(const Config& cfg, const RunHooks& hooks = {});

/// Saves all networks of a run (Q-nets, actor, critic, step net) plus a manifest.
void save_learners(const std::filesystem::path& dir, const Learners& learners,
                   const std::string& config_hash);
void load_learners(const std::filesystem::path& dir, Learners& learners);

}  // namespace hdw::harness
