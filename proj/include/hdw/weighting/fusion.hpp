#pragma once

#include "hdw/weighting/simplex.hpp"
#include "hdw/weighting/weighting_config.hpp"

namespace hdw::weighting {

struct FusedWeight {
  WeightPair weight;
  double delta = 0.0;
};

/// delta = clip(delta0 + beta |R - C|, delta_min, delta_max);
/// w = normalize((1 - delta) w_ep + delta w_st).
FusedWeight fuse_weights(const WeightPair& episode, const WeightPair& step, double coverage,
                         double comm, const FusionParams& params);

/// Same mix with delta supplied directly (delta = 0 disables the step level).
WeightPair mix_weights(const WeightPair& episode, const WeightPair& step, double delta);

/// Self-supervised target for the step-level net:
/// normalize(l1 * G + l2 * b + l3 * w_ep), G from clipped rewards, b from deficiencies.
WeightPair step_target(double r_cov, double r_comm, double coverage, double comm,
                       const WeightPair& episode, const TargetMixing& mixing);

}  // namespace hdw::weighting
