#include "hdw/agent/action_selection.hpp"

#include <algorithm>
#include <vector>

#include "hdw/common/errors.hpp"

namespace hdw::agent {

double EpsilonSchedule::operator()(long step) const {
  if (horizon <= 0) return floor;
  const double eps = 1.0 - (static_cast<double>(step) / horizon) * (1.0 - floor);
  return std::max(floor, eps);
}

double scalarized_value(const QValues& q, const std::array<double, 2>& weight, int action) {
  const auto a = static_cast<std::size_t>(action);
  return weight[0] * q.cov[a] + weight[1] * q.comm[a];
}

int greedy_action(const QValues& q, const std::array<double, 2>& weight, const ActionMask& mask) {
  int best = -1;
  double best_v = 0.0;
  for (int a = 0; a < env::kActionCount; ++a) {
    if (!mask[static_cast<std::size_t>(a)]) continue;
    const double v = scalarized_value(q, weight, a);
    if (best < 0 || v > best_v) {
      best = a;
      best_v = v;
    }
  }
  if (best < 0) throw UsageError("action selection with an empty legal-action mask");
  return best;
}

int select_action(const QValues& q, const std::array<double, 2>& weight, const ActionMask& mask,
                  double epsilon, Rng& rng) {
  if (epsilon > 0.0 && uniform01(rng) < epsilon) {
    std::vector<int> legal;
    for (int a = 0; a < env::kActionCount; ++a)
      if (mask[static_cast<std::size_t>(a)]) legal.push_back(a);
    if (legal.empty()) throw UsageError("action selection with an empty legal-action mask");
    std::uniform_int_distribution<std::size_t> pick(0, legal.size() - 1);
    return legal[pick(rng)];
  }
  return greedy_action(q, weight, mask);
}

}  // namespace hdw::agent
