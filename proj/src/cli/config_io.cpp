#include "hdw/cli/config_io.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "hdw/common/errors.hpp"
#include "hdw/common/random.hpp"

namespace hdw::cli {

using harness::Config;

namespace {

[[noreturn]] void bad_value(const std::string& key, const std::string& want, const std::string& got) {
  throw ConfigError(key + ": expected " + want + ", got '" + got + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size()) bad_value(key, "a number", text);
  return v;
}

long long to_integer(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  const long long v = std::strtoll(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size()) bad_value(key, "an integer", text);
  return v;
}

bool to_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  bad_value(key, "true or false", text);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Field {
  std::function<std::string(const Config&)> get;
  std::function<void(Config&, const std::string& key, const std::string&)> set;
};

template <class Get>
Field real_field(Get ref) {
  return {[ref](const Config& c) { return fmt(ref(c)); },
          [ref](Config& c, const std::string& k, const std::string& v) { ref(c) = to_double(k, v); }};
}

template <class Get>
Field int_field(Get ref) {
  return {[ref](const Config& c) { return std::to_string(ref(c)); },
          [ref](Config& c, const std::string& k, const std::string& v) {
            const auto n = to_integer(k, v);
            using T = std::remove_reference_t<decltype(ref(c))>;
            if (n < std::numeric_limits<T>::min() || n > std::numeric_limits<T>::max())
              bad_value(k, "an integer in range", v);
            ref(c) = static_cast<T>(n);
          }};
}

template <class Get>
Field bool_field(Get ref) {
  return {[ref](const Config& c) { return std::string(ref(c) ? "true" : "false"); },
          [ref](Config& c, const std::string& k, const std::string& v) { ref(c) = to_bool(k, v); }};
}

agent::TargetMode parse_target_mode(const std::string& key, const std::string& text) {
  const auto t = trim(text);
  if (t == "per_head_max") return agent::TargetMode::PerHeadMax;
  if (t == "scalarized_greedy") return agent::TargetMode::ScalarizedGreedy;
  bad_value(key, "per_head_max or scalarized_greedy", text);
}

std::vector<std::uint64_t> parse_seeds(const std::string& key, const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto t = trim(item);
    char* end = nullptr;
    const auto v = std::strtoull(t.c_str(), &end, 10);
    if (t.empty() || t[0] == '-' || end != t.c_str() + t.size()) bad_value(key, "a comma-separated seed list", text);
    out.push_back(v);
  }
  if (out.empty()) bad_value(key, "a comma-separated seed list", text);
  return out;
}

using Registry = std::vector<std::pair<std::string, Field>>;

#define HDW_REF(expr) [](auto& c) -> auto& { return c.expr; }

const Registry& registry() {
  static const Registry r = [] {
    Registry r;
    auto add = [&r](std::string key, Field f) { r.emplace_back(std::move(key), std::move(f)); };
    add("scenario.grid_h", int_field(HDW_REF(scenario.grid_h)));
    add("scenario.grid_w", int_field(HDW_REF(scenario.grid_w)));
    add("scenario.cell_side", real_field(HDW_REF(scenario.cell_side)));
    add("scenario.uav_count", int_field(HDW_REF(scenario.uav_count)));
    add("scenario.user_count", int_field(HDW_REF(scenario.user_count)));
    add("scenario.subchannels", int_field(HDW_REF(scenario.subchannels)));
    add("scenario.altitude", real_field(HDW_REF(scenario.altitude)));
    add("scenario.uav_speed", real_field(HDW_REF(scenario.uav_speed)));
    add("scenario.camera_fov_deg", real_field(HDW_REF(scenario.camera_fov_deg)));
    add("scenario.bandwidth", real_field(HDW_REF(scenario.bandwidth)));
    add("scenario.tx_power", real_field(HDW_REF(scenario.tx_power)));
    add("scenario.noise_power", real_field(HDW_REF(scenario.noise_power)));
    add("scenario.path_loss_exp", real_field(HDW_REF(scenario.path_loss_exp)));
    add("scenario.rician_k", real_field(HDW_REF(scenario.rician_k)));
    add("scenario.ref_gain", real_field(HDW_REF(scenario.ref_gain)));
    add("scenario.gain_threshold", real_field(HDW_REF(scenario.gain_threshold)));
    add("scenario.init_demand", real_field(HDW_REF(scenario.init_demand)));
    add("scenario.slot_time", real_field(HDW_REF(scenario.slot_time)));
    add("scenario.decide_time", real_field(HDW_REF(scenario.decide_time)));
    add("scenario.capture_time", real_field(HDW_REF(scenario.capture_time)));
    add("scenario.comm_time", real_field(HDW_REF(scenario.comm_time)));
    add("scenario.prop_power", real_field(HDW_REF(scenario.prop_power)));
    add("scenario.energy_budget", real_field(HDW_REF(scenario.energy_budget)));
    add("scenario.rho_cov", real_field(HDW_REF(scenario.rho_cov)));
    add("scenario.rho_comm", real_field(HDW_REF(scenario.rho_comm)));
    add("scenario.strict_completion", bool_field(HDW_REF(scenario.strict_completion)));

    add("mobility.mean_speed", real_field(HDW_REF(scenario.mobility.mean_speed)));
    add("mobility.mean_heading", real_field(HDW_REF(scenario.mobility.mean_heading)));
    add("mobility.memory", real_field(HDW_REF(scenario.mobility.memory)));
    add("mobility.sigma_speed", real_field(HDW_REF(scenario.mobility.sigma_speed)));
    add("mobility.sigma_heading", real_field(HDW_REF(scenario.mobility.sigma_heading)));

    add("dqn.gamma", real_field(HDW_REF(dqn.gamma)));
    add("dqn.optimizer",
        {[](const Config& c) { return std::string(nn::to_string(c.dqn.optimizer.kind)); },
         [](Config& c, const std::string& k, const std::string& v) {
           try {
             c.dqn.optimizer.kind = nn::parse_optimizer_kind(trim(v));
           } catch (const std::exception&) {
             bad_value(k, "adam or sgd", v);
           }
         }});
    add("dqn.learning_rate", real_field(HDW_REF(dqn.optimizer.learning_rate)));
    add("dqn.adam_beta1", real_field(HDW_REF(dqn.optimizer.beta1)));
    add("dqn.adam_beta2", real_field(HDW_REF(dqn.optimizer.beta2)));
    add("dqn.adam_epsilon", real_field(HDW_REF(dqn.optimizer.epsilon)));
    add("dqn.replay_capacity", int_field(HDW_REF(dqn.replay_capacity)));
    add("dqn.batch_size", int_field(HDW_REF(dqn.batch_size)));
    add("dqn.warmup", int_field(HDW_REF(dqn.warmup)));
    add("dqn.target_period", int_field(HDW_REF(dqn.target_period)));
    add("dqn.epsilon_horizon", int_field(HDW_REF(dqn.epsilon_horizon)));
    add("dqn.epsilon_floor", real_field(HDW_REF(dqn.epsilon_floor)));
    add("dqn.backbone_hidden", int_field(HDW_REF(dqn.backbone_hidden)));
    add("dqn.head_hidden", int_field(HDW_REF(dqn.head_hidden)));
    add("dqn.grad_clip", real_field(HDW_REF(dqn.grad_clip)));
    add("dqn.target_mode",
        {[](const Config& c) {
           return std::string(c.dqn.target_mode == agent::TargetMode::PerHeadMax ? "per_head_max"
                                                                                 : "scalarized_greedy");
         },
         [](Config& c, const std::string& k, const std::string& v) {
           c.dqn.target_mode = parse_target_mode(k, v);
         }});
    add("dqn.share_across_uavs", bool_field(HDW_REF(dqn.share_across_uavs)));

    add("weighting.temperature", real_field(HDW_REF(weighting.temperature)));
    add("weighting.ema", real_field(HDW_REF(weighting.ema)));
    add("weighting.delta0", real_field(HDW_REF(weighting.fusion.delta0)));
    add("weighting.delta_beta", real_field(HDW_REF(weighting.fusion.beta)));
    add("weighting.delta_min", real_field(HDW_REF(weighting.fusion.delta_min)));
    add("weighting.delta_max", real_field(HDW_REF(weighting.fusion.delta_max)));
    add("weighting.lambda1", real_field(HDW_REF(weighting.mixing.lambda1)));
    add("weighting.lambda2", real_field(HDW_REF(weighting.mixing.lambda2)));
    add("weighting.lambda3", real_field(HDW_REF(weighting.mixing.lambda3)));
    add("weighting.beta1", real_field(HDW_REF(weighting.stages.beta1)));
    add("weighting.beta2", real_field(HDW_REF(weighting.stages.beta2)));
    add("weighting.beta3", real_field(HDW_REF(weighting.stages.beta3)));
    add("weighting.theta1", real_field(HDW_REF(weighting.stages.theta1)));
    add("weighting.theta2", real_field(HDW_REF(weighting.stages.theta2)));
    add("weighting.smoothing_penalty", real_field(HDW_REF(weighting.smoothing_penalty)));
    add("weighting.actor_lr", real_field(HDW_REF(weighting.actor_lr)));
    add("weighting.critic_lr", real_field(HDW_REF(weighting.critic_lr)));
    add("weighting.step_lr", real_field(HDW_REF(weighting.step_lr)));
    add("weighting.actor_hidden", int_field(HDW_REF(weighting.actor_hidden)));
    add("weighting.critic_hidden", int_field(HDW_REF(weighting.critic_hidden)));
    add("weighting.step_hidden", int_field(HDW_REF(weighting.step_hidden)));
    add("weighting.actor_noise_start", real_field(HDW_REF(weighting.actor_noise_start)));
    add("weighting.actor_noise_end", real_field(HDW_REF(weighting.actor_noise_end)));
    add("weighting.actor_noise_episodes", int_field(HDW_REF(weighting.actor_noise_episodes)));
    add("weighting.alpha_clip_low", real_field(HDW_REF(weighting.alpha_clip_low)));
    add("weighting.alpha_clip_high", real_field(HDW_REF(weighting.alpha_clip_high)));
    add("weighting.ac_memory", int_field(HDW_REF(weighting.ac_memory)));
    add("weighting.ac_replays", int_field(HDW_REF(weighting.ac_replays)));
    add("weighting.initial_alpha", real_field(HDW_REF(weighting.initial_alpha)));
    add("weighting.static_cov", real_field(HDW_REF(weighting.static_cov)));

    add("experiment.variant",
        {[](const Config& c) { return std::string(harness::to_string(c.experiment.variant)); },
         [](Config& c, const std::string& k, const std::string& v) {
           try {
             c.experiment.variant = harness::parse_variant(trim(v));
           } catch (const std::exception&) {
             bad_value(k, "HDWDRL, NoEAC, NoSWS or StaticWeight", v);
           }
         }});
    add("experiment.episodes", int_field(HDW_REF(experiment.episodes)));
    add("experiment.seeds",
        {[](const Config& c) {
           std::string s;
           for (std::size_t i = 0; i < c.experiment.seeds.size(); ++i)
             s += (i ? "," : "") + std::to_string(c.experiment.seeds[i]);
           return s;
         },
         [](Config& c, const std::string& k, const std::string& v) {
           c.experiment.seeds = parse_seeds(k, v);
         }});
    add("experiment.eval_interval", int_field(HDW_REF(experiment.eval_interval)));
    add("experiment.eval_episodes", int_field(HDW_REF(experiment.eval_episodes)));
    add("experiment.audit_constraints", bool_field(HDW_REF(experiment.audit_constraints)));
    add("experiment.save_checkpoints", bool_field(HDW_REF(experiment.save_checkpoints)));
    add("experiment.write_trace", bool_field(HDW_REF(experiment.write_trace)));
    return r;
  }();
  return r;
}

#undef HDW_REF

const Field* find(const std::string& key) {
  for (const auto& [k, f] : registry())
    if (k == key) return &f;
  return nullptr;
}

}  // namespace

Config default_config() { return Config{}; }

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const auto& [k, f] : registry()) out.push_back(k);
  return out;
}

void apply_setting(Config& cfg, const std::string& key, const std::string& value) {
  const Field* f = find(trim(key));
  if (!f) throw ConfigError(trim(key) + ": unknown key");
  f->set(cfg, trim(key), value);
}

void apply_overrides(Config& cfg, const std::vector<std::string>& overrides) {
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw ConfigError(o + ": override must look like section.key=value");
    apply_setting(cfg, o.substr(0, eq), o.substr(eq + 1));
  }
}

Config parse_config(const std::string& text, const std::vector<std::string>& overrides) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
  }
  Config cfg = default_config();
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ConfigError(section + ": key outside any section");
    for (const auto& [key, value] : body) apply_setting(cfg, section + "." + key, value.data());
  }
  apply_overrides(cfg, overrides);
  harness::validate(cfg);
  return cfg;
}

Config load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
  if (path.empty()) return parse_config("", overrides);
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides);
}

std::string to_ini(const Config& cfg) {
  std::string out;
  std::string section;
  for (const auto& [key, f] : registry()) {
    const auto dot = key.find('.');
    const auto sec = key.substr(0, dot);
    if (sec != section) {
      if (!section.empty()) out += '\n';
      out += "[" + sec + "]\n";
      section = sec;
    }
    out += key.substr(dot + 1) + " = " + f.get(cfg) + "\n";
  }
  return out;
}

std::string config_hash(const Config& cfg) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(to_ini(cfg))));
  return buf;
}

}  // namespace hdw::cli
