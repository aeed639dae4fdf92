#pragma once

#include <array>
#include <span>
#include <vector>

#include "hdw/agent/dqn_config.hpp"
#include "hdw/agent/transition.hpp"
#include "hdw/nn/dense_net.hpp"
#include "hdw/nn/optimizer.hpp"

namespace hdw::agent {

struct QValues {
  std::array<double, env::kActionCount> cov{};
  std::array<double, env::kActionCount> comm{};
};

struct TdLosses {
  double cov = 0.0;
  double comm = 0.0;
};

/// Shared ReLU backbone feeding two independent action-value heads, plus
/// frozen target copies of all three networks.
class MultiHeadQNet {
 public:
  MultiHeadQNet() = default;
  MultiHeadQNet(int input_size, const DqnConfig& cfg, Rng& init_rng);

  [[nodiscard]] int input_size() const { return backbone_.input_size(); }

  [[nodiscard]] QValues q_values(std::span<const double> x) const;
  [[nodiscard]] QValues target_q_values(std::span<const double> x) const;
  [[nodiscard]] nn::Vector features(std::span<const double> x) const;

  /// One optimizer step on the summed per-head MSE against TD targets built
  /// from the target networks. Syncs the targets every target_period updates.
  TdLosses td_update(std::span<const Transition* const> batch);

  /// Hard copy online -> target.
  void sync_target();

  [[nodiscard]] long update_count() const { return updates_; }
  [[nodiscard]] const DqnConfig& config() const { return cfg_; }

  nn::DenseNet& backbone() { return backbone_; }
  nn::DenseNet& head_cov() { return head_cov_; }
  nn::DenseNet& head_comm() { return head_comm_; }
  [[nodiscard]] const nn::DenseNet& backbone() const { return backbone_; }
  [[nodiscard]] const nn::DenseNet& head_cov() const { return head_cov_; }
  [[nodiscard]] const nn::DenseNet& head_comm() const { return head_comm_; }
  [[nodiscard]] const nn::DenseNet& target_backbone() const { return target_backbone_; }
  [[nodiscard]] const nn::DenseNet& target_head_cov() const { return target_head_cov_; }
  [[nodiscard]] const nn::DenseNet& target_head_comm() const { return target_head_comm_; }

  /// Restores online parameters (targets re-synced) from checkpointed nets.
  void load(nn::DenseNet backbone, nn::DenseNet head_cov, nn::DenseNet head_comm);

 private:
  DqnConfig cfg_;
  nn::DenseNet backbone_, head_cov_, head_comm_;
  nn::DenseNet target_backbone_, target_head_cov_, target_head_comm_;
  nn::Optimizer opt_backbone_, opt_cov_, opt_comm_;
  long updates_ = 0;
};

}  // namespace hdw::agent
