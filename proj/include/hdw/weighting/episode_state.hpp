#pragma once

#include <array>

#include "hdw/weighting/simplex.hpp"
#include "hdw/weighting/weighting_config.hpp"

namespace hdw::weighting {

struct EmaPair {
  double coverage = 0.0;
  double comm = 0.0;
};

/// Exponential moving average of episode completion rates.
EmaPair update_ema(EmaPair prev, double coverage, double comm, double alpha_ema);

/// s_ep = [C_ema, R_ema, zeta, alpha_prev] with zeta = (C_ema - R_ema + 1) / 2.
struct GlobalEpisodeState {
  double ema_coverage = 0.0;
  double ema_comm = 0.0;
  double discrepancy = 0.5;
  double prev_alpha = 0.5;

  [[nodiscard]] std::array<double, 4> as_array() const {
    return {ema_coverage, ema_comm, discrepancy, prev_alpha};
  }
};

/// Cross-episode bookkeeping of the weighting layer.
struct WeightState {
  EmaPair ema;                // zeros before the first episode
  double prev_alpha = 0.5;    // alpha of the previous episode
  int episode = 0;
};

GlobalEpisodeState build_global_state(const WeightState& state);

/// g_t = [C, R, 1 - C, 1 - R, alpha, 1 - alpha, C - R].
std::array<double, 7> global_context(double coverage, double comm, double alpha);

double episode_base_reward(double coverage, double comm, const StageConstants& stages);

}  // namespace hdw::weighting
