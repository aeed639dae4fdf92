#pragma once

#include <array>
#include <span>
#include <vector>

#include "hdw/common/random.hpp"
#include "hdw/nn/dense_net.hpp"
#include "hdw/nn/optimizer.hpp"
#include "hdw/weighting/simplex.hpp"
#include "hdw/weighting/weighting_config.hpp"

namespace hdw::weighting {

/// Two ReLU layers over [x_t; g_t] and a temperature-scaled softmax output.
class StepWeightNet {
 public:
  StepWeightNet() = default;
  StepWeightNet(int local_state_size, const WeightingConfig& cfg, Rng& init_rng);

  [[nodiscard]] static std::vector<double> input(std::span<const double> local_state,
                                                 const std::array<double, 7>& context);

  [[nodiscard]] WeightPair weight(std::span<const double> local_state,
                                  const std::array<double, 7>& context) const;

  /// One gradient step on ||w_st - target||^2. Returns the loss before the step.
  double update(std::span<const double> local_state, const std::array<double, 7>& context,
                const WeightPair& target);

  nn::DenseNet& net() { return net_; }
  [[nodiscard]] const nn::DenseNet& net() const { return net_; }

 private:
  nn::DenseNet net_;
  nn::Optimizer opt_;
};

}  // namespace hdw::weighting
