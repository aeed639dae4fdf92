#include "hdw/nn/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hdw/common/errors.hpp"

namespace hdw::nn {

OptimizerKind parse_optimizer_kind(std::string_view name) {
  if (name == "adam") return OptimizerKind::Adam;
  if (name == "sgd") return OptimizerKind::GradientDescent;
  throw ConfigError("unknown optimizer '" + std::string(name) + "' (expected adam or sgd)");
}

std::string_view to_string(OptimizerKind kind) {
  return kind == OptimizerKind::Adam ? "adam" : "sgd";
}

void Optimizer::step(std::span<double> params, std::span<double> grads) {
  if (params.size() != grads.size())
    throw ShapeError("optimizer: parameter and gradient lengths differ");
  ++steps_;
  const double lr = cfg_.learning_rate;
  if (cfg_.kind == OptimizerKind::GradientDescent) {
    for (std::size_t i = 0; i < params.size(); ++i) params[i] -= lr * grads[i];
  } else {
    if (m_.empty()) {
      m_.assign(params.size(), 0.0);
      v_.assign(params.size(), 0.0);
    }
    if (m_.size() != params.size()) throw ShapeError("optimizer: parameter count changed");
    const double b1 = cfg_.beta1;
    const double b2 = cfg_.beta2;
    const double c1 = 1.0 - std::pow(b1, static_cast<double>(steps_));
    const double c2 = 1.0 - std::pow(b2, static_cast<double>(steps_));
    for (std::size_t i = 0; i < params.size(); ++i) {
      m_[i] = b1 * m_[i] + (1.0 - b1) * grads[i];
      v_[i] = b2 * v_[i] + (1.0 - b2) * grads[i] * grads[i];
      params[i] -= lr * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + cfg_.epsilon);
    }
  }
  std::fill(grads.begin(), grads.end(), 0.0);
}

double clip_global_norm(std::initializer_list<DenseNet*> nets, double max_norm) {
  double sq = 0.0;
  for (auto* net : nets)
    for (double g : net->gradients()) sq += g * g;
  const double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    const double scale = max_norm / norm;
    for (auto* net : nets)
      for (double& g : net->gradients()) g *= scale;
  }
  return norm;
}

}  // namespace hdw::nn
