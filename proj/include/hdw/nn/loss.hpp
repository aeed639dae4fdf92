#pragma once

#include "hdw/nn/dense_net.hpp"

namespace hdw::nn {

struct LossResult {
  double value = 0.0;
  Matrix gradient;  // dLoss/dPred, same shape as pred
};

/// Mean squared error over all entries; gradient 2 (pred - target) / n.
LossResult mse_loss(const Matrix& pred, const Matrix& target);

/// Sum of squared differences per column, averaged over columns.
LossResult squared_error_loss(const Matrix& pred, const Matrix& target);

}  // namespace hdw::nn
