#pragma once

#include <vector>

#include "hdw/env/scenario_config.hpp"
#include "hdw/env/world.hpp"

namespace hdw::agent {

/// Length of the per-UAV observation:
/// own position (2) + own users (N_sub x 3) + other UAVs ((M-1) x 2)
/// + other UAVs' users ((M-1) x N_sub x 3) + 3x3 coverage patch (9).
int local_state_size(const env::ScenarioConfig& cfg);

/// Encodes the observation of one UAV. Positions are divided by the area side,
/// queues by the initial demand. Users within a block are listed in ascending
/// id and padded with zeros. Patch cells outside the grid read as covered.
std::vector<double> encode_local_state(const env::WorldState& world, int uav_id,
                                       const env::Association& assoc,
                                       const env::ScenarioConfig& cfg);

}  // namespace hdw::agent
