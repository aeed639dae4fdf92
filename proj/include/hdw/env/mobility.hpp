#pragma once

#include "hdw/common/random.hpp"
#include "hdw/env/scenario_config.hpp"
#include "hdw/env/world.hpp"

namespace hdw::env {

/// Gauss-Markov speed/heading update followed by an Euler position step over
/// one slot. Users reflect off the area boundary with their heading mirrored.
/// Speed is clamped to [0, 3 * mean_speed].
UserState step_user_mobility(const UserState& user, const ScenarioConfig& cfg, Rng& rng);

/// Deterministic core: same update with the noise terms supplied explicitly.
UserState step_user_mobility(const UserState& user, const ScenarioConfig& cfg,
                             double speed_noise, double heading_noise);

}  // namespace hdw::env
