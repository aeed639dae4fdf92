#pragma once

namespace hdw::weighting {

/// Piecewise episode reward: blend beta_i * C + (1 - beta_i) * R with the
/// stage chosen by coverage against theta1 < theta2.
struct StageConstants {
  double beta1 = 0.7;
  double beta2 = 0.5;
  double beta3 = 0.3;
  double theta1 = 0.5;
  double theta2 = 0.8;
  bool operator==(const StageConstants&) const = default;
};

struct FusionParams {
  double delta0 = 0.45;
  double beta = 0.20;
  double delta_min = 0.15;
  double delta_max = 0.45;
  bool operator==(const FusionParams&) const = default;
};

struct TargetMixing {
  double lambda1 = 0.4;  // immediate rewards
  double lambda2 = 0.4;  // completion deficiencies
  double lambda3 = 0.2;  // episode prior
  bool operator==(const TargetMixing&) const = default;
};

struct WeightingConfig {
  double temperature = 0.5;
  double ema = 0.25;
  FusionParams fusion;
  TargetMixing mixing;
  StageConstants stages;
  double smoothing_penalty = 0.1;  // mu

  double actor_lr = 1e-3;
  double critic_lr = 1e-3;
  double step_lr = 5e-4;
  int actor_hidden = 64;
  int critic_hidden = 64;
  int step_hidden = 64;

  double actor_noise_start = 0.1;
  double actor_noise_end = 0.01;
  int actor_noise_episodes = 300;
  double alpha_clip_low = 0.01;
  double alpha_clip_high = 0.99;

  int ac_memory = 32;   // recent (s_ep, alpha, target) tuples kept
  int ac_replays = 4;   // gradient passes over that memory per episode

  double initial_alpha = 0.5;
  double static_cov = 0.5;  // coverage weight of the StaticWeight variant

  bool operator==(const WeightingConfig&) const = default;
};

}  // namespace hdw::weighting
