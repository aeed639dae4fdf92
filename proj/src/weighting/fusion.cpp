#include "hdw/weighting/fusion.hpp"

#include <algorithm>
#include <cmath>

namespace hdw::weighting {

WeightPair mix_weights(const WeightPair& episode, const WeightPair& step, double delta) {
  return normalize({(1.0 - delta) * episode[0] + delta * step[0],
                    (1.0 - delta) * episode[1] + delta * step[1]});
}

FusedWeight fuse_weights(const WeightPair& episode, const WeightPair& step, double coverage,
                         double comm, const FusionParams& p) {
  const double imbalance = std::abs((1.0 - coverage) - (1.0 - comm));
  const double delta = std::clamp(p.delta0 + p.beta * imbalance, p.delta_min, p.delta_max);
  return {mix_weights(episode, step, delta), delta};
}

WeightPair step_target(double r_cov, double r_comm, double coverage, double comm,
                       const WeightPair& episode, const TargetMixing& m) {
  const WeightPair gain = normalize({std::max(r_cov, 0.0), std::max(r_comm, 0.0)});
  const WeightPair deficit = normalize({1.0 - coverage, 1.0 - comm});
  return normalize({m.lambda1 * gain[0] + m.lambda2 * deficit[0] + m.lambda3 * episode[0],
                    m.lambda1 * gain[1] + m.lambda2 * deficit[1] + m.lambda3 * episode[1]});
}

}  // namespace hdw::weighting
