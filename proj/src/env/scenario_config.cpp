#include "hdw/env/scenario_config.hpp"

#include <cmath>
#include <string>

#include "hdw/common/errors.hpp"

namespace hdw::env {

namespace {

void require(bool ok, const char* key, const std::string& what) {
  if (!ok) throw ConfigError(std::string(key) + ": " + what);
}

}  // namespace

void validate(const ScenarioConfig& c) {
  require(c.grid_h > 0, "scenario.grid_h", "must be positive");
  require(c.grid_w > 0, "scenario.grid_w", "must be positive");
  require(c.cell_side > 0, "scenario.cell_side", "must be positive");
  require(c.uav_count > 0, "scenario.uav_count", "must be positive");
  require(c.uav_count <= c.cell_count(), "scenario.uav_count",
          "exceeds the number of grid cells");
  require(c.user_count >= 0, "scenario.user_count", "must be non-negative");
  require(c.subchannels > 0, "scenario.subchannels", "must be positive");
  require(c.altitude > 0, "scenario.altitude", "must be positive");
  require(c.uav_speed > 0, "scenario.uav_speed", "must be positive");
  require(c.camera_fov_deg > 0 && c.camera_fov_deg < 180, "scenario.camera_fov_deg",
          "must lie in (0, 180)");
  require(c.bandwidth > 0, "channel.bandwidth", "must be positive");
  require(c.tx_power > 0, "channel.tx_power", "must be positive");
  require(c.noise_power > 0, "channel.noise_power", "must be positive");
  require(c.path_loss_exp > 0, "channel.path_loss_exp", "must be positive");
  require(c.rician_k >= 0, "channel.rician_k", "must be non-negative");
  require(c.ref_gain > 0, "channel.ref_gain", "must be positive");
  require(c.gain_threshold >= 0, "channel.gain_threshold", "must be non-negative");
  require(c.init_demand >= 0, "scenario.init_demand", "must be non-negative");
  require(c.slot_time > 0, "timing.slot_time", "must be positive");
  require(c.decide_time >= 0 && c.capture_time >= 0 && c.comm_time >= 0, "timing",
          "slot parts must be non-negative");
  require(c.decide_time + c.capture_time + c.comm_time <= c.slot_time, "timing.slot_time",
          "must cover decide_time + capture_time + comm_time");
  require(c.prop_power > 0, "energy.prop_power", "must be positive");
  require(c.energy_budget >= 0, "energy.energy_budget", "must be non-negative");
  require(c.rho_cov > 0 && c.rho_cov <= 1, "scenario.rho_cov", "must lie in (0, 1]");
  require(c.rho_comm > 0 && c.rho_comm <= 1, "scenario.rho_comm", "must lie in (0, 1]");
  require(c.mobility.mean_speed >= 0, "mobility.mean_speed", "must be non-negative");
  require(std::isfinite(c.mobility.mean_heading), "mobility.mean_heading", "must be finite");
  require(c.mobility.memory >= 0 && c.mobility.memory <= 1, "mobility.memory",
          "must lie in [0, 1]");
  require(c.mobility.sigma_speed >= 0, "mobility.sigma_speed", "must be non-negative");
  require(c.mobility.sigma_heading >= 0, "mobility.sigma_heading", "must be non-negative");
}

double footprint_side(const ScenarioConfig& cfg) {
  const double half_angle = cfg.camera_fov_deg * std::numbers::pi / 360.0;
  return 2.0 * cfg.altitude * std::tan(half_angle);
}

}  // namespace hdw::env
