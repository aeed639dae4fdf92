#pragma once

#include <array>

#include "hdw/agent/q_network.hpp"
#include "hdw/agent/transition.hpp"
#include "hdw/common/random.hpp"

namespace hdw::agent {

/// Linear annealing from 1 to the floor over `horizon` steps, flat afterwards.
struct EpsilonSchedule {
  int horizon = 7500;
  double floor = 0.0025;

  [[nodiscard]] double operator()(long step) const;
};

/// w_cov * Q_cov[a] + w_comm * Q_comm[a].
double scalarized_value(const QValues& q, const std::array<double, 2>& weight, int action);

/// Greedy legal action under the scalarized value; ties go to the lowest index.
int greedy_action(const QValues& q, const std::array<double, 2>& weight, const ActionMask& mask);

/// Epsilon-greedy over legal actions. Throws UsageError on an empty mask.
int select_action(const QValues& q, const std::array<double, 2>& weight, const ActionMask& mask,
                  double epsilon, Rng& rng);

}  // namespace hdw::agent
