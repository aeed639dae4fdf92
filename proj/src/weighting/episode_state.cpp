#include "hdw/weighting/episode_state.hpp"

namespace hdw::weighting {

EmaPair update_ema(EmaPair prev, double coverage, double comm, double alpha_ema) {
  return {(1.0 - alpha_ema) * prev.coverage + alpha_ema * coverage,
          (1.0 - alpha_ema) * prev.comm + alpha_ema * comm};
}

GlobalEpisodeState build_global_state(const WeightState& state) {
  GlobalEpisodeState s;
  s.ema_coverage = state.ema.coverage;
  s.ema_comm = state.ema.comm;
  s.discrepancy = (state.ema.coverage - state.ema.comm + 1.0) / 2.0;
  s.prev_alpha = state.prev_alpha;
  return s;
}

std::array<double, 7> global_context(double coverage, double comm, double alpha) {
  return {coverage, comm, 1.0 - coverage, 1.0 - comm, alpha, 1.0 - alpha, coverage - comm};
}

double episode_base_reward(double coverage, double comm, const StageConstants& st) {
  double beta = st.beta3;
  if (coverage < st.theta1) {
    beta = st.beta1;
  } else if (coverage < st.theta2) {
    beta = st.beta2;
  }
  return beta * coverage + (1.0 - beta) * comm;
}

}  // namespace hdw::weighting
