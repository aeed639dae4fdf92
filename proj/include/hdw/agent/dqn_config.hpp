#pragma once

#include "hdw/nn/optimizer.hpp"

namespace hdw::agent {

enum class TargetMode {
  PerHeadMax,        // each head bootstraps from its own max over legal actions
  ScalarizedGreedy,  // both heads bootstrap at the fused-weight greedy action
};

struct DqnConfig {
  double gamma = 0.9;
  nn::OptimizerConfig optimizer{nn::OptimizerKind::Adam, 1e-3};
  int replay_capacity = 8000;
  int batch_size = 64;
  int warmup = 500;          // buffer size before updates start
  int target_period = 5;     // updates between hard target syncs
  int epsilon_horizon = 7500;
  double epsilon_floor = 0.0025;
  int backbone_hidden = 128;  // two ReLU layers
  int head_hidden = 64;       // one ReLU layer per head
  double grad_clip = 10.0;
  TargetMode target_mode = TargetMode::PerHeadMax;
  bool share_across_uavs = true;

  bool operator==(const DqnConfig& o) const;
};

}  // namespace hdw::agent
