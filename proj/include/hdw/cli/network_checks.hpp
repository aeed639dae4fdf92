#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hdw/agent/q_network.hpp"
#include "hdw/harness/experiment.hpp"
#include "hdw/nn/grad_check.hpp"

namespace hdw::cli {

struct NetworkCheck {
  std::string name;
  int inputs = 0;
  double worst_error = 0.0;
  std::size_t coordinates = 0;
  std::size_t kinks_skipped = 0;
  bool passed = false;
};

/// Finite-difference check of the two-headed Q-network as one function of
/// backbone, both heads and the input, under L = <c1, Q_cov> + <c2, Q_comm>.
nn::GradCheckResult check_q_network(agent::MultiHeadQNet& q, std::span<const double> input,
                                    const nn::GradCheckOptions& opts, Rng& rng);

/// Instantiates the Q-network, episode actor, episode critic and step net of
/// cfg from `seed` and checks each on `inputs` random inputs.
std::vector<NetworkCheck> check_all_networks(const harness::Config& cfg, std::uint64_t seed,
                                             int inputs, const nn::GradCheckOptions& opts);

}  // namespace hdw::cli
