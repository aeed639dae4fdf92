#include "hdw/nn/loss.hpp"

#include "hdw/common/errors.hpp"

namespace hdw::nn {

namespace {

void check_same_shape(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("loss: prediction and target shapes differ");
}

}  // namespace

LossResult mse_loss(const Matrix& pred, const Matrix& target) {
  check_same_shape(pred, target);
  const auto n = static_cast<double>(pred.size());
  const Matrix diff = pred - target;
  return {diff.squaredNorm() / n, 2.0 * diff / n};
}

LossResult squared_error_loss(const Matrix& pred, const Matrix& target) {
  check_same_shape(pred, target);
  const auto cols = static_cast<double>(pred.cols());
  const Matrix diff = pred - target;
  return {diff.squaredNorm() / cols, 2.0 * diff / cols};
}

}  // namespace hdw::nn
