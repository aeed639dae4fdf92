#pragma once

#include <complex>
#include <vector>

#include "hdw/common/random.hpp"
#include "hdw/env/scenario_config.hpp"
#include "hdw/env/world.hpp"

namespace hdw::env {

struct ChannelSample {
  double power = 0.0;      // |h|^2
  double magnitude = 0.0;  // |h|, compared against gain_threshold
};

/// Large-scale power gain alpha / (h^2 + d^2)^(K_ps / 2).
double path_gain(double horizontal_distance, const ScenarioConfig& cfg);

/// Rician small-scale coefficient with a fixed 1+0j line-of-sight component.
std::complex<double> rician_coefficient(std::complex<double> scattered, double rician_k);

/// Channel for an explicit scattered component (deterministic).
ChannelSample channel_gain(double horizontal_distance, std::complex<double> scattered,
                           const ScenarioConfig& cfg);

/// Channel between a UAV and a user with a fresh CN(0, 1) scattered draw.
ChannelSample channel_gain(const UavState& uav, const UserState& user, const ScenarioConfig& cfg,
                           Rng& rng);

/// Shannon rate on one subchannel: (B / N_sub) log2(1 + |h|^2 p_tx / sigma^2).
double achievable_rate(double gain_power, const ScenarioConfig& cfg);

/// Block-fading draws for every (UAV, user) pair, indexed [uav][user].
/// Dead UAVs get zero gain but still consume draws so the stream stays aligned.
using ChannelMatrix = std::vector<std::vector<ChannelSample>>;
ChannelMatrix draw_channels(WorldState& world, const ScenarioConfig& cfg);

/// Best-gain greedy association with per-UAV cap of N_sub users.
Association associate_users(const WorldState& world, const ChannelMatrix& channels,
                            const ScenarioConfig& cfg);

/// Convenience: draw channels and associate.
Association associate_users(WorldState& world, const ScenarioConfig& cfg);

}  // namespace hdw::env
