#pragma once

#include <cstdint>
#include <numbers>

namespace hdw::env {

/// Gauss-Markov user mobility parameters.
struct MobilityConfig {
  double mean_speed = 0.6;                      // m/s
  double mean_heading = std::numbers::pi / 2;   // rad
  double memory = 0.9;                          // alpha in [0, 1]
  double sigma_speed = 0.1;                     // m/s
  double sigma_heading = 0.2;                   // rad

  bool operator==(const MobilityConfig&) const = default;
};

/// Physical scenario. Defaults reproduce the full-scale mission setup.
struct ScenarioConfig {
  int grid_h = 10;
  int grid_w = 10;
  double cell_side = 100.0;  // m
  int uav_count = 6;
  int user_count = 50;
  int subchannels = 10;

  double altitude = 50.0;        // m
  double uav_speed = 20.0;       // m/s
  double camera_fov_deg = 90.0;  // both axes

  double bandwidth = 16e6;        // Hz, shared by the subchannels of one UAV
  double tx_power = 0.18;         // W
  double noise_power = 1e-14;     // W
  double path_loss_exp = 2.0;
  double rician_k = 1.0;
  double ref_gain = 5e-5;         // channel power gain at 1 m
  double gain_threshold = 2e-5;   // minimum |h| for service

  double init_demand = 100e6;  // bits per user

  double slot_time = 5.0;   // t_f
  double decide_time = 0.01;
  double capture_time = 0.1;
  double comm_time = 0.75;

  double prop_power = 497.25;     // W
  double energy_budget = 250e3;   // J per UAV

  double rho_cov = 0.8;
  double rho_comm = 0.98;
  /// Require C = 1 and R = 1 for success instead of the (rho_cov, rho_comm) thresholds.
  bool strict_completion = false;

  MobilityConfig mobility;
  std::uint64_t seed = 1;

  [[nodiscard]] int cell_count() const { return grid_h * grid_w; }
  [[nodiscard]] double area_width() const { return grid_w * cell_side; }
  [[nodiscard]] double area_height() const { return grid_h * cell_side; }
  [[nodiscard]] double subchannel_bandwidth() const { return bandwidth / subchannels; }

  bool operator==(const ScenarioConfig&) const = default;
};

/// Throws ConfigError naming the first violated constraint.
void validate(const ScenarioConfig& cfg);

/// Ground footprint side length 2 h tan(fov / 2), in meters.
double footprint_side(const ScenarioConfig& cfg);

}  // namespace hdw::env
