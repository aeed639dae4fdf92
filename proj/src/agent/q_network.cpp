#include "hdw/agent/q_network.hpp"

#include <algorithm>
#include <limits>

#include "hdw/common/errors.hpp"
#include "hdw/nn/loss.hpp"

namespace hdw::agent {

using nn::Activation;
using nn::Matrix;

bool DqnConfig::operator==(const DqnConfig& o) const {
  return gamma == o.gamma && optimizer.kind == o.optimizer.kind &&
         optimizer.learning_rate == o.optimizer.learning_rate &&
         replay_capacity == o.replay_capacity && batch_size == o.batch_size &&
         warmup == o.warmup && target_period == o.target_period &&
         epsilon_horizon == o.epsilon_horizon && epsilon_floor == o.epsilon_floor &&
         backbone_hidden == o.backbone_hidden && head_hidden == o.head_hidden &&
         grad_clip == o.grad_clip && target_mode == o.target_mode &&
         share_across_uavs == o.share_across_uavs;
}

MultiHeadQNet::MultiHeadQNet(int input_size, const DqnConfig& cfg, Rng& init_rng) : cfg_(cfg) {
  const int h = cfg.backbone_hidden;
  backbone_ = nn::DenseNet({input_size, h, h}, {Activation::ReLU, Activation::ReLU});
  head_cov_ = nn::DenseNet({h, cfg.head_hidden, env::kActionCount},
                           {Activation::ReLU, Activation::Identity});
  head_comm_ = head_cov_;
  backbone_.initialize(init_rng);
  head_cov_.initialize(init_rng);
  head_comm_.initialize(init_rng);
  opt_backbone_ = nn::Optimizer(cfg.optimizer);
  opt_cov_ = nn::Optimizer(cfg.optimizer);
  opt_comm_ = nn::Optimizer(cfg.optimizer);
  sync_target();
}

namespace {

QValues to_qvalues(const Matrix& cov, const Matrix& comm) {
  QValues q;
  for (int a = 0; a < env::kActionCount; ++a) {
    q.cov[static_cast<std::size_t>(a)] = cov(a, 0);
    q.comm[static_cast<std::size_t>(a)] = comm(a, 0);
  }
  return q;
}

Matrix stack(std::span<const Transition* const> batch, bool next, int rows) {
  Matrix x(rows, static_cast<Eigen::Index>(batch.size()));
  for (std::size_t b = 0; b < batch.size(); ++b) {
    const auto& v = next ? batch[b]->next_state : batch[b]->state;
    if (static_cast<int>(v.size()) != rows) throw ShapeError("transition state has wrong length");
    std::copy(v.begin(), v.end(), x.col(static_cast<Eigen::Index>(b)).data());
  }
  return x;
}

}  // namespace

QValues MultiHeadQNet::q_values(std::span<const double> x) const {
  const Matrix f = backbone_.predict(nn::to_column(x));
  return to_qvalues(head_cov_.predict(f), head_comm_.predict(f));
}

QValues MultiHeadQNet::target_q_values(std::span<const double> x) const {
  const Matrix f = target_backbone_.predict(nn::to_column(x));
  return to_qvalues(target_head_cov_.predict(f), target_head_comm_.predict(f));
}

nn::Vector MultiHeadQNet::features(std::span<const double> x) const {
  return backbone_.predict(x);
}

TdLosses MultiHeadQNet::td_update(std::span<const Transition* const> batch) {
  if (batch.empty()) throw UsageError("td_update needs a non-empty batch");
  const int in = input_size();
  const auto n = static_cast<Eigen::Index>(batch.size());

  const Matrix next_x = stack(batch, true, in);
  const Matrix next_f = target_backbone_.predict(next_x);
  const Matrix next_cov = target_head_cov_.predict(next_f);
  const Matrix next_comm = target_head_comm_.predict(next_f);

  Matrix y_cov(1, n), y_comm(1, n);
  for (Eigen::Index b = 0; b < n; ++b) {
    const Transition& t = *batch[static_cast<std::size_t>(b)];
    double boot_cov = 0.0;
    double boot_comm = 0.0;
    if (!t.terminal) {
      if (cfg_.target_mode == TargetMode::PerHeadMax) {
        boot_cov = -std::numeric_limits<double>::infinity();
        boot_comm = -std::numeric_limits<double>::infinity();
        for (int a = 0; a < env::kActionCount; ++a) {
          if (!t.next_mask[static_cast<std::size_t>(a)]) continue;
          boot_cov = std::max(boot_cov, next_cov(a, b));
          boot_comm = std::max(boot_comm, next_comm(a, b));
        }
      } else {
        int best = -1;
        double best_v = 0.0;
        for (int a = 0; a < env::kActionCount; ++a) {
          if (!t.next_mask[static_cast<std::size_t>(a)]) continue;
          const double v = t.weight[0] * next_cov(a, b) + t.weight[1] * next_comm(a, b);
          if (best < 0 || v > best_v) {
            best = a;
            best_v = v;
          }
        }
        boot_cov = next_cov(best, b);
        boot_comm = next_comm(best, b);
      }
    }
    y_cov(0, b) = t.r_cov + cfg_.gamma * boot_cov;
    y_comm(0, b) = t.r_comm + cfg_.gamma * boot_comm;
  }

  const Matrix x = stack(batch, false, in);
  const Matrix& f = backbone_.forward(x);
  const Matrix& q_cov = head_cov_.forward(f);
  const Matrix& q_comm = head_comm_.forward(f);

  Matrix taken_cov(1, n), taken_comm(1, n);
  for (Eigen::Index b = 0; b < n; ++b) {
    const int a = batch[static_cast<std::size_t>(b)]->action;
    taken_cov(0, b) = q_cov(a, b);
    taken_comm(0, b) = q_comm(a, b);
  }
  const auto loss_cov = nn::mse_loss(taken_cov, y_cov);
  const auto loss_comm = nn::mse_loss(taken_comm, y_comm);

  Matrix d_cov = Matrix::Zero(env::kActionCount, n);
  Matrix d_comm = Matrix::Zero(env::kActionCount, n);
  for (Eigen::Index b = 0; b < n; ++b) {
    const int a = batch[static_cast<std::size_t>(b)]->action;
    d_cov(a, b) = loss_cov.gradient(0, b);
    d_comm(a, b) = loss_comm.gradient(0, b);
  }
  const Matrix df = head_cov_.backward(d_cov) + head_comm_.backward(d_comm);
  backbone_.backward(df);

  nn::clip_global_norm({&backbone_, &head_cov_, &head_comm_}, cfg_.grad_clip);
  opt_backbone_.step(backbone_);
  opt_cov_.step(head_cov_);
  opt_comm_.step(head_comm_);

  ++updates_;
  if (cfg_.target_period > 0 && updates_ % cfg_.target_period == 0) sync_target();
  return {loss_cov.value, loss_comm.value};
}

void MultiHeadQNet::sync_target() {
  target_backbone_ = backbone_;
  target_head_cov_ = head_cov_;
  target_head_comm_ = head_comm_;
}

void MultiHeadQNet::load(nn::DenseNet backbone, nn::DenseNet head_cov, nn::DenseNet head_comm) {
  if (backbone.layer_sizes() != backbone_.layer_sizes() ||
      head_cov.layer_sizes() != head_cov_.layer_sizes() ||
      head_comm.layer_sizes() != head_comm_.layer_sizes())
    throw ShapeError("checkpointed Q-network shapes do not match the configuration");
  backbone_ = std::move(backbone);
  head_cov_ = std::move(head_cov);
  head_comm_ = std::move(head_comm);
  sync_target();
}

}  // namespace hdw::agent
