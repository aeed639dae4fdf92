#pragma once

#include <deque>
#include <functional>
#include <span>

#include "hdw/common/random.hpp"
#include "hdw/nn/dense_net.hpp"
#include "hdw/nn/optimizer.hpp"
#include "hdw/weighting/episode_state.hpp"

namespace hdw::weighting {

struct AcLosses {
  double critic = 0.0;
  double actor = 0.0;
};

/// Episode-level weight policy: a sigmoid actor mapping s_ep to the coverage
/// weight alpha, and a critic scoring (s_ep, alpha). The actor is trained by
/// ascending the critic's value through its alpha input.
class EpisodeActorCritic {
 public:
  EpisodeActorCritic() = default;
  EpisodeActorCritic(const WeightingConfig& cfg, Rng& init_rng);

  /// Deterministic policy output f(s_ep) in (0, 1).
  [[nodiscard]] double policy_alpha(const GlobalEpisodeState& s) const;

  /// Policy output (plus Gaussian exploration when explore is set), clipped
  /// to [alpha_clip_low, alpha_clip_high].
  [[nodiscard]] double episode_weight(const GlobalEpisodeState& s, bool explore,
                                      double noise_sigma, Rng& rng) const;

  /// Exploration scale for the k-th training episode (linear anneal).
  [[nodiscard]] double noise_scale(int episode) const;

  [[nodiscard]] double value(const GlobalEpisodeState& s, double alpha) const;

  /// Critic target r_base - mu |alpha - prev_alpha|.
  [[nodiscard]] double critic_target(double alpha, double prev_alpha, double r_base) const;

  /// Records the finished episode and runs the configured replay passes, each
  /// one critic step followed by one actor step over the recent memory.
  AcLosses update(const GlobalEpisodeState& s, double alpha, double prev_alpha, double r_base);

  /// One critic regression step on (state, alpha) -> target. Returns the MSE.
  double critic_step(std::span<const GlobalEpisodeState> states, std::span<const double> alphas,
                     std::span<const double> targets);

  /// One actor step maximizing the learned critic. Returns -mean V.
  double actor_step(std::span<const GlobalEpisodeState> states);

  /// One actor step ascending an externally supplied dV/dalpha.
  void actor_step(std::span<const GlobalEpisodeState> states,
                  const std::function<double(const GlobalEpisodeState&, double)>& dvalue_dalpha);

  nn::DenseNet& actor() { return actor_; }
  nn::DenseNet& critic() { return critic_; }
  [[nodiscard]] const nn::DenseNet& actor() const { return actor_; }
  [[nodiscard]] const nn::DenseNet& critic() const { return critic_; }

 private:
  struct Sample {
    GlobalEpisodeState state;
    double alpha;
    double target;
  };

  WeightingConfig cfg_;
  nn::DenseNet actor_;
  nn::DenseNet critic_;
  nn::Optimizer actor_opt_;
  nn::Optimizer critic_opt_;
  std::deque<Sample> memory_;
};

}  // namespace hdw::weighting
