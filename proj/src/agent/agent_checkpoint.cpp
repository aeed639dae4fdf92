#include "hdw/agent/agent_checkpoint.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "hdw/common/errors.hpp"
#include "hdw/nn/checkpoint.hpp"

namespace hdw::agent {

void save_agent(const std::filesystem::path& dir, const MultiHeadQNet& net,
                const AgentManifest& manifest, const std::string& prefix) {
  std::filesystem::create_directories(dir);
  nn::save_network(dir / (prefix + "backbone.net"), net.backbone());
  nn::save_network(dir / (prefix + "head_cov.net"), net.head_cov());
  nn::save_network(dir / (prefix + "head_comm.net"), net.head_comm());
  nlohmann::json j;
  j["format"] = "hdwdrl-agent";
  j["version"] = 1;
  j["config_hash"] = manifest.config_hash;
  j["step_counter"] = manifest.step_counter;
  j["epsilon"] = manifest.epsilon;
  j["updates"] = manifest.updates;
  const auto path = dir / (prefix + "manifest.json");
  std::ofstream os(path);
  if (!os) throw FormatError("cannot write " + path.string());
  os << j.dump(2) << '\n';
}

AgentManifest load_agent(const std::filesystem::path& dir, MultiHeadQNet& net,
                         const std::string& prefix) {
  const auto path = dir / (prefix + "manifest.json");
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open " + path.string());
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  if (j.value("format", "") != "hdwdrl-agent" || j.value("version", 0) != 1)
    throw FormatError(path.string() + ": not a version-1 agent manifest");
  AgentManifest m;
  m.config_hash = j.at("config_hash").get<std::string>();
  m.step_counter = j.at("step_counter").get<long>();
  m.epsilon = j.at("epsilon").get<double>();
  m.updates = j.value("updates", 0L);
  net.load(nn::load_network(dir / (prefix + "backbone.net")),
           nn::load_network(dir / (prefix + "head_cov.net")),
           nn::load_network(dir / (prefix + "head_comm.net")));
  return m;
}

}  // namespace hdw::agent
