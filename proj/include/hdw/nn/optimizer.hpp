#pragma once

#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

#include "hdw/nn/dense_net.hpp"

namespace hdw::nn {

enum class OptimizerKind { Adam, GradientDescent };

OptimizerKind parse_optimizer_kind(std::string_view name);
std::string_view to_string(OptimizerKind kind);

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::Adam;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Update rule state for one parameter vector. Moment buffers are sized on
/// first use and must keep that size afterwards.
class Optimizer {
 public:
  Optimizer() = default;
  explicit Optimizer(OptimizerConfig cfg) : cfg_(cfg) {}

  /// Applies one update and clears the gradients.
  void step(std::span<double> params, std::span<double> grads);
  void step(DenseNet& net) { step(net.parameters(), net.gradients()); }

  [[nodiscard]] const OptimizerConfig& config() const { return cfg_; }
  [[nodiscard]] long step_count() const { return steps_; }
  [[nodiscard]] std::span<const double> first_moment() const { return m_; }
  [[nodiscard]] std::span<const double> second_moment() const { return v_; }

 private:
  OptimizerConfig cfg_;
  std::vector<double> m_;
  std::vector<double> v_;
  long steps_ = 0;
};

/// Rescales the gradients of all nets jointly so that their combined L2 norm
/// is at most max_norm. Returns the norm before clipping. max_norm <= 0 disables.
double clip_global_norm(std::initializer_list<DenseNet*> nets, double max_norm);

}  // namespace hdw::nn
