#include "hdw/harness/episode_runner.hpp"

#include <chrono>
#include <optional>
#include <ostream>

#include "hdw/agent/local_state.hpp"
#include "hdw/env/channel.hpp"
#include "hdw/env/mobility.hpp"
#include "hdw/env/trace.hpp"
#include "hdw/weighting/fusion.hpp"

namespace hdw::harness {

using weighting::WeightPair;

Learners Learners::create(const Config& cfg, std::uint64_t seed) {
  Learners l;
  Rng init = make_stream(seed, "nets");
  const int in = agent::local_state_size(cfg.scenario);
  const int copies = cfg.dqn.share_across_uavs ? 1 : cfg.scenario.uav_count;
  for (int i = 0; i < copies; ++i) {
    l.q.emplace_back(in, cfg.dqn, init);
    l.replay.emplace_back(static_cast<std::size_t>(cfg.dqn.replay_capacity));
  }
  l.ac = weighting::EpisodeActorCritic(cfg.weighting, init);
  l.step = weighting::StepWeightNet(in, cfg.weighting, init);
  l.weights.prev_alpha = cfg.weighting.initial_alpha;
  l.epsilon = {cfg.dqn.epsilon_horizon, cfg.dqn.epsilon_floor};
  l.explore_rng = make_stream(seed, "explore");
  l.replay_rng = make_stream(seed, "replay");
  return l;
}

namespace {

struct Running {
  double sum = 0.0;
  long n = 0;
  void add(double v) {
    sum += v;
    ++n;
  }
  [[nodiscard]] double mean() const { return n > 0 ? sum / static_cast<double>(n) : 0.0; }
};

struct StepSample {
  std::vector<double> state;
  std::array<double, 7> context;
  env::CompletionRatios ratios;
};

class EpisodeRun {
 public:
  EpisodeRun(const Config& cfg, Variant variant, Learners& l, const EpisodeOptions& opts)
      : cfg_(cfg), sc_(cfg.scenario), variant_(variant), l_(l), opts_(opts),
        pending_(static_cast<std::size_t>(cfg.scenario.uav_count)) {}

  EpisodeStats run(env::WorldState world);

 private:
  void store(int uav, agent::Transition t);
  WeightPair decide_weight(const std::vector<double>& x, const env::CompletionRatios& r,
                           std::optional<StepSample>& sample);

  const Config& cfg_;
  const env::ScenarioConfig& sc_;
  Variant variant_;
  Learners& l_;
  EpisodeOptions opts_;
  std::vector<std::optional<agent::Transition>> pending_;
  WeightPair episode_w_{0.5, 0.5};
  double alpha_ = 0.5;
  Running delta_, w_cov_, loss_cov_, loss_comm_, loss_step_;
  long dqn_updates_ = 0;
  long step_updates_ = 0;
};

void EpisodeRun::store(int uav, agent::Transition t) {
  const std::size_t i = l_.net_index(uav);
  auto& buffer = l_.replay[i];
  buffer.push(std::move(t));
  if (static_cast<int>(buffer.size()) < std::max(cfg_.dqn.warmup, 1)) return;
  const auto batch = buffer.sample(static_cast<std::size_t>(cfg_.dqn.batch_size), l_.replay_rng);
  const auto losses = l_.q[i].td_update(batch);
  loss_cov_.add(losses.cov);
  loss_comm_.add(losses.comm);
  ++dqn_updates_;
}

WeightPair EpisodeRun::decide_weight(const std::vector<double>& x, const env::CompletionRatios& r,
                                     std::optional<StepSample>& sample) {
  const auto& wc = cfg_.weighting;
  switch (variant_) {
    case Variant::StaticWeight:
      delta_.add(0.0);
      return {wc.static_cov, 1.0 - wc.static_cov};
    case Variant::NoSWS:
      delta_.add(0.0);
      return weighting::mix_weights(episode_w_, episode_w_, 0.0);
    case Variant::HDWDRL:
    case Variant::NoEAC: {
      const auto g = weighting::global_context(r.coverage, r.comm, alpha_);
      const WeightPair w_st = l_.step.weight(x, g);
      const auto fused = weighting::fuse_weights(episode_w_, w_st, r.coverage, r.comm, wc.fusion);
      delta_.add(fused.delta);
      sample = StepSample{x, g, r};
      return fused.weight;
    }
  }
  return weighting::kUniform;
}

EpisodeStats EpisodeRun::run(env::WorldState world) {
  const auto t0 = std::chrono::steady_clock::now();
  EpisodeStats stats;
  stats.k = opts_.k;
  const bool train = opts_.train;

  const auto s_ep = weighting::build_global_state(l_.weights);
  if (uses_episode_policy(variant_)) {
    alpha_ = l_.ac.episode_weight(s_ep, train, l_.ac.noise_scale(opts_.k), l_.explore_rng);
  } else if (variant_ == Variant::StaticWeight) {
    alpha_ = cfg_.weighting.static_cov;
  }
  episode_w_ = {alpha_, 1.0 - alpha_};

  auto assoc = env::associate_users(world, sc_);
  auto term = env::is_terminal(world, sc_);
  std::vector<std::optional<StepSample>> samples(pending_.size());

  // Coverage credit goes to the UAV whose capture produced it: each UAV's
  // r_cov is the coverage change across its own move-and-capture sub-step.
  // These sum to the slot's coverage change. Upload happens once per slot,
  // so r_comm is the shared slot-level change.
  std::vector<double> own_cov(pending_.size(), 0.0);
  while (term == env::Termination::Running) {
    std::fill(own_cov.begin(), own_cov.end(), 0.0);
    const auto start = env::completion_ratios(world);
    const double eps = train ? l_.epsilon(l_.env_steps) : 0.0;

    for (int m = 0; m < sc_.uav_count; ++m) {
      auto& pend = pending_[static_cast<std::size_t>(m)];
      samples[static_cast<std::size_t>(m)].reset();
      const bool alive = world.uavs[static_cast<std::size_t>(m)].alive;
      auto x = agent::encode_local_state(world, m, assoc, sc_);
      const auto mask = env::action_mask(world, m);
      if (pend) {
        pend->next_state = x;
        pend->next_mask = mask;
        pend->terminal = !alive;
        if (train) store(m, std::move(*pend));
        pend.reset();
      }
      if (!alive) continue;

      const auto now = env::completion_ratios(world);
      const WeightPair w = decide_weight(x, now, samples[static_cast<std::size_t>(m)]);
      w_cov_.add(w[0]);
      const auto q = l_.q[l_.net_index(m)].q_values(x);
      const int a = agent::select_action(q, w, mask, eps, l_.explore_rng);
      const auto before = env::completion_ratios(world);
      env::apply_uav_move(world, m, static_cast<env::Action>(a));
      env::capture_cell(world, m);
      own_cov[static_cast<std::size_t>(m)] = env::step_rewards(before, env::completion_ratios(world))[0];

      agent::Transition t;
      t.state = std::move(x);
      t.action = a;
      t.weight = w;
      pend = std::move(t);
    }

    env::serve_users(world, assoc, sc_);
    env::consume_energy(world, sc_);
    env::advance_users(world, sc_);
    ++stats.slots;
    if (train) ++l_.env_steps;

    const auto end = env::completion_ratios(world);
    const auto r = env::step_rewards(start, end);
    for (std::size_t m = 0; m < pending_.size(); ++m) {
      auto& pend = pending_[m];
      if (!pend) continue;
      pend->r_cov = own_cov[m];
      pend->r_comm = r[1];
    }
    if (cfg_.experiment.audit_constraints) env::audit_constraints(world, assoc, sc_);
    if (opts_.trace) env::write_trace_line(*opts_.trace, world);

    if (train && uses_step_net(variant_)) {
      for (auto& s : samples) {
        if (!s) continue;
        const auto target = weighting::step_target(r[0], r[1], s->ratios.coverage, s->ratios.comm,
                                                   episode_w_, cfg_.weighting.mixing);
        loss_step_.add(l_.step.update(s->state, s->context, target));
        ++step_updates_;
      }
    }

    term = env::is_terminal(world, sc_);
    if (term != env::Termination::Running) break;
    assoc = env::associate_users(world, sc_);
  }

  // Close out transitions still waiting for a successor state.
  for (int m = 0; m < sc_.uav_count; ++m) {
    auto& pend = pending_[static_cast<std::size_t>(m)];
    if (!pend) continue;
    pend->next_state = agent::encode_local_state(world, m, assoc, sc_);
    pend->next_mask = env::action_mask(world, m);
    pend->terminal = term == env::Termination::Success;
    if (train) store(m, std::move(*pend));
    pend.reset();
  }

  const auto final_r = env::completion_ratios(world);
  stats.coverage = final_r.coverage;
  stats.comm = final_r.comm;
  stats.success = term == env::Termination::Success;
  for (const auto& u : world.uavs) stats.energy += u.energy_used;
  stats.alpha = alpha_;
  stats.mean_delta = delta_.mean();
  stats.mean_w_cov = w_cov_.n > 0 ? w_cov_.mean() : episode_w_[0];
  stats.loss_cov = loss_cov_.mean();
  stats.loss_comm = loss_comm_.mean();
  stats.loss_step = loss_step_.mean();
  stats.dqn_updates = dqn_updates_;
  stats.step_updates = step_updates_;

  if (train && uses_episode_policy(variant_)) {
    const double r_base = weighting::episode_base_reward(final_r.coverage, final_r.comm,
                                                         cfg_.weighting.stages);
    const auto losses = l_.ac.update(s_ep, alpha_, l_.weights.prev_alpha, r_base);
    stats.loss_critic = losses.critic;
    stats.loss_actor = losses.actor;
    stats.ac_updates = 1;
    l_.weights.ema = weighting::update_ema(l_.weights.ema, final_r.coverage, final_r.comm,
                                           cfg_.weighting.ema);
    l_.weights.prev_alpha = alpha_;
    ++l_.weights.episode;
  }
  stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return stats;
}

}  // namespace

EpisodeStats run_episode(const Config& cfg, Variant variant, Learners& learners,
                         env::WorldState world, const EpisodeOptions& opts) {
  EpisodeRun run(cfg, variant, learners, opts);
  return run.run(std::move(world));
}

}  // namespace hdw::harness
