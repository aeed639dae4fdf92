#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "hdw/agent/q_network.hpp"

namespace hdw::agent {

/// Sidecar describing a saved Q-network directory (manifest.json).
struct AgentManifest {
  std::string config_hash;  // hex FNV-1a of the resolved config text
  long step_counter = 0;    // environment steps seen by the epsilon schedule
  double epsilon = 1.0;
  long updates = 0;
};

/// Writes backbone.net, head_cov.net, head_comm.net and manifest.json into dir
/// (optionally prefixed, e.g. "uav1_").
void save_agent(const std::filesystem::path& dir, const MultiHeadQNet& net,
                const AgentManifest& manifest, const std::string& prefix = "");

AgentManifest load_agent(const std::filesystem::path& dir, MultiHeadQNet& net,
                         const std::string& prefix = "");

}  // namespace hdw::agent
