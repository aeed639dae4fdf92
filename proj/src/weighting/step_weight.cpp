#include "hdw/weighting/step_weight.hpp"

#include "hdw/nn/loss.hpp"

namespace hdw::weighting {

using nn::Activation;

StepWeightNet::StepWeightNet(int local_state_size, const WeightingConfig& cfg, Rng& init_rng) {
  const int h = cfg.step_hidden;
  net_ = nn::DenseNet({local_state_size + 7, h, h, 2},
                      {Activation::ReLU, Activation::ReLU, Activation::Softmax}, cfg.temperature);
  net_.initialize(init_rng);
  opt_ = nn::Optimizer({nn::OptimizerKind::Adam, cfg.step_lr});
}

std::vector<double> StepWeightNet::input(std::span<const double> local_state,
                                         const std::array<double, 7>& context) {
  std::vector<double> in(local_state.begin(), local_state.end());
  in.insert(in.end(), context.begin(), context.end());
  return in;
}

WeightPair StepWeightNet::weight(std::span<const double> local_state,
                                 const std::array<double, 7>& context) const {
  const auto out = net_.predict(input(local_state, context));
  return {out(0), out(1)};
}

double StepWeightNet::update(std::span<const double> local_state,
                             const std::array<double, 7>& context, const WeightPair& target) {
  const auto in = input(local_state, context);
  const nn::Matrix& w = net_.forward(nn::to_column(in));
  nn::Matrix t(2, 1);
  t << target[0], target[1];
  const auto loss = nn::squared_error_loss(w, t);
  net_.backward(loss.gradient);
  nn::clip_global_norm({&net_}, 10.0);
  opt_.step(net_);
  return loss.value;
}

}  // namespace hdw::weighting
