#pragma once

#include <cstdint>
#include <iosfwd>

#include "hdw/env/world.hpp"

namespace hdw::cli {

struct EnvReport {
  int slots = 0;
  env::Termination termination = env::Termination::Running;
  double coverage = 0.0;
  double comm = 0.0;
  double energy_per_uav = 0.0;   // J, mean over UAVs
  double mean_served = 0.0;      // served links per slot
  long blocked_moves = 0;
  int audits = 0;                // slots whose constraint audit passed
};

/// Drives the world with uniformly random legal moves for up to max_slots
/// slots (or until termination), auditing every constraint after each slot.
/// Throws InvariantViolation on the first failure.
EnvReport validate_env(const env::ScenarioConfig& cfg, std::uint64_t seed, int max_slots);

void print_report(std::ostream& os, const EnvReport& r);

}  // namespace hdw::cli
