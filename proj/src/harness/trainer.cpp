#include "hdw/harness/trainer.hpp"

#include <fstream>
#include <string>

#include <json.hpp>

#include "hdw/agent/agent_checkpoint.hpp"
#include "hdw/common/errors.hpp"
#include "hdw/nn/checkpoint.hpp"

namespace hdw::harness {

void validate(const Config& cfg) {
  env::validate(cfg.scenario);
  const auto& d = cfg.dqn;
  if (!(d.gamma >= 0.0 && d.gamma <= 1.0)) throw ConfigError("dqn.gamma: must lie in [0, 1]");
  if (d.optimizer.learning_rate < 0) throw ConfigError("dqn.learning_rate: must be non-negative");
  if (d.replay_capacity <= 0) throw ConfigError("dqn.replay_capacity: must be positive");
  if (d.batch_size <= 0) throw ConfigError("dqn.batch_size: must be positive");
  if (d.warmup < 0) throw ConfigError("dqn.warmup: must be non-negative");
  if (d.target_period <= 0) throw ConfigError("dqn.target_period: must be positive");
  if (d.epsilon_horizon < 0) throw ConfigError("dqn.epsilon_horizon: must be non-negative");
  if (!(d.epsilon_floor >= 0.0 && d.epsilon_floor <= 1.0))
    throw ConfigError("dqn.epsilon_floor: must lie in [0, 1]");
  if (d.backbone_hidden <= 0) throw ConfigError("dqn.backbone_hidden: must be positive");
  if (d.head_hidden <= 0) throw ConfigError("dqn.head_hidden: must be positive");

  const auto& w = cfg.weighting;
  if (!(w.temperature > 0)) throw ConfigError("weighting.temperature: must be positive");
  if (!(w.ema >= 0 && w.ema <= 1)) throw ConfigError("weighting.ema: must lie in [0, 1]");
  if (w.fusion.delta_min > w.fusion.delta_max)
    throw ConfigError("weighting.delta_min: must not exceed weighting.delta_max");
  if (w.fusion.delta_min < 0 || w.fusion.delta_max > 1)
    throw ConfigError("weighting.delta_max: delta bounds must lie in [0, 1]");
  if (w.mixing.lambda1 < 0 || w.mixing.lambda2 < 0 || w.mixing.lambda3 < 0)
    throw ConfigError("weighting.lambda1: mixing coefficients must be non-negative");
  if (w.stages.theta1 > w.stages.theta2)
    throw ConfigError("weighting.theta1: must not exceed weighting.theta2");
  if (w.smoothing_penalty < 0) throw ConfigError("weighting.smoothing_penalty: must be non-negative");
  if (w.actor_hidden <= 0 || w.critic_hidden <= 0 || w.step_hidden <= 0)
    throw ConfigError("weighting.step_hidden: hidden sizes must be positive");
  if (!(w.alpha_clip_low > 0 && w.alpha_clip_high < 1 && w.alpha_clip_low < w.alpha_clip_high))
    throw ConfigError("weighting.alpha_clip_low: clip range must lie inside (0, 1)");
  if (!(w.initial_alpha >= 0 && w.initial_alpha <= 1))
    throw ConfigError("weighting.initial_alpha: must lie in [0, 1]");
  if (!(w.static_cov >= 0 && w.static_cov <= 1))
    throw ConfigError("weighting.static_cov: must lie in [0, 1]");

  const auto& e = cfg.experiment;
  if (e.episodes < 0) throw ConfigError("experiment.episodes: must be non-negative");
  if (e.seeds.empty()) throw ConfigError("experiment.seeds: at least one seed is required");
  if (e.eval_interval < 0) throw ConfigError("experiment.eval_interval: must be non-negative");
  if (e.eval_episodes < 0) throw ConfigError("experiment.eval_episodes: must be non-negative");
}

env::ScenarioConfig episode_scenario(const env::ScenarioConfig& base, std::uint64_t run_seed,
                                     int index, bool eval) {
  env::ScenarioConfig sc = base;
  const std::uint64_t stream = derive_seed(run_seed, eval ? "eval-env" : "train-env");
  sc.seed = splitmix64(stream + static_cast<std::uint64_t>(index));
  return sc;
}

std::vector<EpisodeStats> evaluate(const Config& cfg, Variant variant, Learners& learners,
                                   std::uint64_t run_seed, int count, int k, std::ostream* trace) {
  std::vector<EpisodeStats> out;
  for (int j = 0; j < count; ++j) {
    Config c = cfg;
    c.scenario = episode_scenario(cfg.scenario, run_seed, j, true);
    EpisodeOptions opts;
    opts.train = false;
    opts.k = k;
    opts.trace = trace;
    out.push_back(run_episode(c, variant, learners, env::init_world(c.scenario), opts));
  }
  return out;
}

RunLog train_run(const Config& cfg, Variant variant, std::uint64_t seed, Learners& learners,
                 const RunHooks& hooks) {
  RunLog log;
  log.seed = seed;
  log.variant = variant;
  const auto& ex = cfg.experiment;
  for (int k = 0; k < ex.episodes; ++k) {
    Config c = cfg;
    c.scenario = episode_scenario(cfg.scenario, seed, k, false);
    EpisodeOptions opts;
    opts.train = true;
    opts.k = k;
    log.train.push_back(run_episode(c, variant, learners, env::init_world(c.scenario), opts));
    if (hooks.on_episode) hooks.on_episode(log, log.train.back(), false);

    if (ex.eval_interval > 0 && ex.eval_episodes > 0 && (k + 1) % ex.eval_interval == 0) {
      for (auto& s : evaluate(cfg, variant, learners, seed, ex.eval_episodes, k, hooks.trace)) {
        log.eval.push_back(s);
        if (hooks.on_episode) hooks.on_episode(log, log.eval.back(), true);
      }
    }
  }
  return log;
}

RunLog train_run(const Config& cfg, Variant variant, std::uint64_t seed, const RunHooks& hooks) {
  auto learners = Learners::create(cfg, seed);
  return train_run(cfg, variant, seed, learners, hooks);
}

std::vector<RunLog> train(const Config& cfg, const RunHooks& hooks) {
  validate(cfg);
  std::vector<RunLog> logs;
  for (auto seed : cfg.experiment.seeds)
    logs.push_back(train_run(cfg, cfg.experiment.variant, seed, hooks));
  return logs;
}

void save_learners(const std::filesystem::path& dir, const Learners& learners,
                   const std::string& config_hash) {
  for (std::size_t i = 0; i < learners.q.size(); ++i) {
    agent::AgentManifest m;
    m.config_hash = config_hash;
    m.step_counter = learners.env_steps;
    m.epsilon = learners.epsilon(learners.env_steps);
    m.updates = learners.q[i].update_count();
    const std::string prefix = learners.q.size() == 1 ? "" : "uav" + std::to_string(i) + "_";
    agent::save_agent(dir, learners.q[i], m, prefix);
  }
  nn::save_network(dir / "actor.net", learners.ac.actor());
  nn::save_network(dir / "critic.net", learners.ac.critic());
  nn::save_network(dir / "step.net", learners.step.net());
  const auto& w = learners.weights;
  nlohmann::json j = {{"ema_coverage", w.ema.coverage}, {"ema_comm", w.ema.comm},
                      {"prev_alpha", w.prev_alpha}, {"episode", w.episode}};
  std::ofstream(dir / "weights.json") << j.dump(2) << '\n';
}

void load_learners(const std::filesystem::path& dir, Learners& learners) {
  for (std::size_t i = 0; i < learners.q.size(); ++i) {
    const std::string prefix = learners.q.size() == 1 ? "" : "uav" + std::to_string(i) + "_";
    const auto m = agent::load_agent(dir, learners.q[i], prefix);
    learners.env_steps = m.step_counter;
  }
  auto load_into = [&](nn::DenseNet& net, const char* file) {
    auto loaded = nn::load_network(dir / file);
    net.copy_parameters_from(loaded);
  };
  load_into(learners.ac.actor(), "actor.net");
  load_into(learners.ac.critic(), "critic.net");
  load_into(learners.step.net(), "step.net");
  std::ifstream in(dir / "weights.json");
  if (!in) throw ConfigError("checkpoint: missing weights.json in " + dir.string());
  const auto j = nlohmann::json::parse(in);
  auto& w = learners.weights;
  w.ema.coverage = j.at("ema_coverage").get<double>();
  w.ema.comm = j.at("ema_comm").get<double>();
  w.prev_alpha = j.at("prev_alpha").get<double>();
  w.episode = j.at("episode").get<int>();
}

}  // namespace hdw::harness
