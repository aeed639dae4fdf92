#pragma once

#include <array>
#include <vector>

#include "hdw/env/world.hpp"

namespace hdw::agent {

using ActionMask = std::array<bool, env::kActionCount>;

struct Transition {
  std::vector<double> state;
  int action = 0;
  double r_cov = 0.0;
  double r_comm = 0.0;
  std::vector<double> next_state;
  bool terminal = false;
  ActionMask next_mask{true, true, true, true};
  /// Fused weight in force when acting; only read by the scalarized target mode.
  std::array<double, 2> weight{0.5, 0.5};
};

}  // namespace hdw::agent
