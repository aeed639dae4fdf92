#include "hdw/weighting/episode_ac.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hdw/common/errors.hpp"
#include "hdw/nn/loss.hpp"

namespace hdw::weighting {

using nn::Activation;
using nn::Matrix;

namespace {

constexpr double kGradClip = 10.0;

Matrix state_matrix(std::span<const GlobalEpisodeState> states) {
  Matrix s(4, static_cast<Eigen::Index>(states.size()));
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto a = states[i].as_array();
    for (int r = 0; r < 4; ++r) s(r, static_cast<Eigen::Index>(i)) = a[static_cast<std::size_t>(r)];
  }
  return s;
}

Matrix critic_input(const Matrix& states, const Matrix& alphas) {
  Matrix in(5, states.cols());
  in.topRows(4) = states;
  in.row(4) = alphas.row(0);
  return in;
}

}  // namespace

EpisodeActorCritic::EpisodeActorCritic(const WeightingConfig& cfg, Rng& init_rng) : cfg_(cfg) {
  const int ha = cfg.actor_hidden;
  const int hc = cfg.critic_hidden;
  actor_ = nn::DenseNet({4, ha, ha, 1}, {Activation::ReLU, Activation::ReLU, Activation::Sigmoid});
  critic_ = nn::DenseNet({5, hc, hc, 1}, {Activation::ReLU, Activation::ReLU, Activation::Identity});
  actor_.initialize(init_rng);
  critic_.initialize(init_rng);
  actor_opt_ = nn::Optimizer({nn::OptimizerKind::Adam, cfg.actor_lr});
  critic_opt_ = nn::Optimizer({nn::OptimizerKind::Adam, cfg.critic_lr});
}

double EpisodeActorCritic::policy_alpha(const GlobalEpisodeState& s) const {
  const auto a = s.as_array();
  return actor_.predict(std::span<const double>(a))(0);
}

double EpisodeActorCritic::episode_weight(const GlobalEpisodeState& s, bool explore,
                                          double noise_sigma, Rng& rng) const {
  double alpha = policy_alpha(s);
  if (explore) alpha += gaussian(rng, 0.0, noise_sigma);
  return std::clamp(alpha, cfg_.alpha_clip_low, cfg_.alpha_clip_high);
}

double EpisodeActorCritic::noise_scale(int episode) const {
  if (cfg_.actor_noise_episodes <= 0) return cfg_.actor_noise_end;
  const double frac = std::min(1.0, static_cast<double>(episode) / cfg_.actor_noise_episodes);
  return cfg_.actor_noise_start + frac * (cfg_.actor_noise_end - cfg_.actor_noise_start);
}

double EpisodeActorCritic::value(const GlobalEpisodeState& s, double alpha) const {
  const auto a = s.as_array();
  const std::array<double, 5> in{a[0], a[1], a[2], a[3], alpha};
  return critic_.predict(std::span<const double>(in))(0);
}

double EpisodeActorCritic::critic_target(double alpha, double prev_alpha, double r_base) const {
  return r_base - cfg_.smoothing_penalty * std::abs(alpha - prev_alpha);
}

double EpisodeActorCritic::critic_step(std::span<const GlobalEpisodeState> states,
                                       std::span<const double> alphas,
                                       std::span<const double> targets) {
  if (states.empty() || states.size() != alphas.size() || states.size() != targets.size())
    throw ShapeError("critic_step: batch components differ in length");
  const auto n = static_cast<Eigen::Index>(states.size());
  Matrix a(1, n), y(1, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(0, i) = alphas[static_cast<std::size_t>(i)];
    y(0, i) = targets[static_cast<std::size_t>(i)];
  }
  const Matrix& v = critic_.forward(critic_input(state_matrix(states), a));
  const auto loss = nn::mse_loss(v, y);
  critic_.backward(loss.gradient);
  nn::clip_global_norm({&critic_}, kGradClip);
  critic_opt_.step(critic_);
  return loss.value;
}

double EpisodeActorCritic::actor_step(std::span<const GlobalEpisodeState> states) {
  if (states.empty()) throw ShapeError("actor_step: empty batch");
  const auto n = static_cast<Eigen::Index>(states.size());
  const Matrix s = state_matrix(states);
  const Matrix alpha = actor_.forward(s);
  const Matrix& v = critic_.forward(critic_input(s, alpha));
  const double loss = -v.mean();
  // d(-mean V)/d input, then keep only the alpha row.
  const Matrix d_in = critic_.backward(Matrix::Constant(1, n, -1.0 / static_cast<double>(n)));
  critic_.zero_gradients();
  actor_.backward(d_in.row(4));
  nn::clip_global_norm({&actor_}, kGradClip);
  actor_opt_.step(actor_);
  return loss;
}

void EpisodeActorCritic::actor_step(
    std::span<const GlobalEpisodeState> states,
    const std::function<double(const GlobalEpisodeState&, double)>& dvalue_dalpha) {
  if (states.empty()) throw ShapeError("actor_step: empty batch");
  const auto n = static_cast<Eigen::Index>(states.size());
  const Matrix alpha = actor_.forward(state_matrix(states));
  Matrix upstream(1, n);
  for (Eigen::Index i = 0; i < n; ++i)
    upstream(0, i) = -dvalue_dalpha(states[static_cast<std::size_t>(i)], alpha(0, i)) /
                     static_cast<double>(n);
  actor_.backward(upstream);
  nn::clip_global_norm({&actor_}, kGradClip);
  actor_opt_.step(actor_);
}

AcLosses EpisodeActorCritic::update(const GlobalEpisodeState& s, double alpha,
                                    double prev_alpha, double r_base) {
  memory_.push_back({s, alpha, critic_target(alpha, prev_alpha, r_base)});
  while (static_cast<int>(memory_.size()) > std::max(1, cfg_.ac_memory)) memory_.pop_front();

  std::vector<GlobalEpisodeState> states;
  std::vector<double> alphas, targets;
  for (const auto& m : memory_) {
    states.push_back(m.state);
    alphas.push_back(m.alpha);
    targets.push_back(m.target);
  }
  AcLosses losses;
  const int passes = std::max(1, cfg_.ac_replays);
  for (int p = 0; p < passes; ++p) {
    losses.critic = critic_step(states, alphas, targets);
    losses.actor = actor_step(states);
  }
  return losses;
}

}  // namespace hdw::weighting
