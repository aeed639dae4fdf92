#pragma once

#include <iosfwd>
#include <vector>

#include "hdw/agent/action_selection.hpp"
#include "hdw/agent/q_network.hpp"
#include "hdw/agent/replay_buffer.hpp"
#include "hdw/env/world.hpp"
#include "hdw/harness/experiment.hpp"
#include "hdw/weighting/episode_ac.hpp"
#include "hdw/weighting/episode_state.hpp"
#include "hdw/weighting/step_weight.hpp"

namespace hdw::harness {

struct EpisodeStats {
  int k = 0;
  double coverage = 0.0;  // C(T)
  double comm = 0.0;      // R(T)
  int slots = 0;          // T
  bool success = false;
  double energy = 0.0;    // J, all UAVs
  double alpha = 0.5;     // episode weight used
  double mean_delta = 0.0;
  double mean_w_cov = 0.5;
  double loss_cov = 0.0;  // means over the episode's updates
  double loss_comm = 0.0;
  double loss_step = 0.0;
  double loss_critic = 0.0;
  double loss_actor = 0.0;
  long dqn_updates = 0;
  long step_updates = 0;
  long ac_updates = 0;
  double wall_seconds = 0.0;  // not part of any persisted output
};

/// All learnable state of one run.
struct Learners {
  std::vector<agent::MultiHeadQNet> q;       // one shared net, or one per UAV
  std::vector<agent::ReplayBuffer> replay;   // matches q
  weighting::EpisodeActorCritic ac;
  weighting::StepWeightNet step;
  weighting::WeightState weights;
  agent::EpsilonSchedule epsilon;
  long env_steps = 0;  // clock of the epsilon schedule
  Rng explore_rng;
  Rng replay_rng;

  /// Builds fresh networks from the run seed.
  static Learners create(const Config& cfg, std::uint64_t seed);

  [[nodiscard]] std::size_t net_index(int uav) const { return q.size() == 1 ? 0 : static_cast<std::size_t>(uav); }
};

struct EpisodeOptions {
  bool train = true;
  int k = 0;                 // training-episode index (noise anneal, logging)
  std::ostream* trace = nullptr;
};

/// Runs one episode on a fresh world. In training mode transitions are
/// stored and every network of the variant is updated; otherwise the
/// policy is greedy and nothing learnable changes.
EpisodeStats run_episode(const Config& cfg, Variant variant, Learners& learners,
                         env::WorldState world, const EpisodeOptions& opts);

}  // namespace hdw::harness
