#include "hdw/nn/dense_net.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hdw/common/errors.hpp"

namespace hdw::nn {

Matrix softmax(const Matrix& logits, double temperature) {
  Matrix out(logits.rows(), logits.cols());
  for (Eigen::Index c = 0; c < logits.cols(); ++c) {
    const auto z = logits.col(c) / temperature;
    const double shift = z.maxCoeff();
    const auto e = (z.array() - shift).exp();
    out.col(c) = e / e.sum();
  }
  return out;
}

Matrix to_column(std::span<const double> values) {
  Matrix m(static_cast<Eigen::Index>(values.size()), 1);
  std::copy(values.begin(), values.end(), m.data());
  return m;
}

DenseNet::DenseNet(std::vector<int> layer_sizes, std::vector<Activation> activations,
                   double temperature)
    : sizes_(std::move(layer_sizes)), activations_(std::move(activations)) {
  if (sizes_.size() < 2) throw ShapeError("DenseNet needs at least an input and output size");
  if (activations_.size() != sizes_.size() - 1)
    throw ShapeError("DenseNet needs one activation per layer");
  for (int s : sizes_)
    if (s <= 0) throw ShapeError("DenseNet layer sizes must be positive");
  for (std::size_t l = 0; l + 1 < activations_.size(); ++l)
    if (activations_[l] == Activation::Softmax)
      throw ShapeError("softmax is only supported on the output layer");
  set_temperature(temperature);

  std::size_t total = 0;
  for (std::size_t l = 0; l < activations_.size(); ++l) {
    offsets_.push_back(total);
    total += static_cast<std::size_t>(sizes_[l + 1]) * (sizes_[l] + 1);
  }
  params_.assign(total, 0.0);
  grads_.assign(total, 0.0);
}

void DenseNet::set_temperature(double tau) {
  if (!(tau > 0.0)) throw ShapeError("softmax temperature must be positive");
  temperature_ = tau;
}

void DenseNet::initialize(Rng& rng) {
  for (int l = 0; l < layer_count(); ++l) {
    const int fan_in = sizes_[l];
    const int fan_out = sizes_[l + 1];
    const double bound = activations_[l] == Activation::ReLU
                             ? std::sqrt(6.0 / fan_in)
                             : std::sqrt(6.0 / (fan_in + fan_out));
    std::uniform_real_distribution<double> dist(-bound, bound);
    const std::size_t off = weight_offset(l);
    const std::size_t n_w = static_cast<std::size_t>(fan_in) * fan_out;
    for (std::size_t i = 0; i < n_w; ++i) params_[off + i] = dist(rng);
    std::fill_n(params_.begin() + static_cast<std::ptrdiff_t>(off + n_w), fan_out, 0.0);
  }
  zero_gradients();
  has_cache_ = false;
}

void DenseNet::zero_gradients() { std::fill(grads_.begin(), grads_.end(), 0.0); }

Eigen::Map<const Matrix> DenseNet::weights(int layer) const {
  return {params_.data() + weight_offset(layer), sizes_[layer + 1], sizes_[layer]};
}

Eigen::Map<const Vector> DenseNet::bias(int layer) const {
  const std::size_t n_w = static_cast<std::size_t>(sizes_[layer + 1]) * sizes_[layer];
  return {params_.data() + weight_offset(layer) + n_w, sizes_[layer + 1]};
}

Matrix DenseNet::apply_layer(int layer, const Matrix& x) const {
  Matrix z = weights(layer) * x;
  z.colwise() += bias(layer);
  switch (activations_[layer]) {
    case Activation::Identity: return z;
    case Activation::ReLU: return z.cwiseMax(0.0);
    case Activation::Sigmoid: return (1.0 / (1.0 + (-z.array()).exp())).matrix();
    case Activation::Softmax: return softmax(z, temperature_);
  }
  return z;
}

namespace {

void check_input(const Matrix& input, int expected) {
  if (input.rows() != expected) {
    std::ostringstream msg;
    msg << "DenseNet input has " << input.rows() << " features, expected " << expected;
    throw ShapeError(msg.str());
  }
}

}  // namespace

const Matrix& DenseNet::forward(const Matrix& input) {
  check_input(input, input_size());
  cache_.resize(activations_.size() + 1);
  cache_[0] = input;
  for (int l = 0; l < layer_count(); ++l) cache_[l + 1] = apply_layer(l, cache_[l]);
  has_cache_ = true;
  return cache_.back();
}

Vector DenseNet::forward(std::span<const double> input) {
  return forward(to_column(input)).col(0);
}

Matrix DenseNet::predict(const Matrix& input) const {
  check_input(input, input_size());
  Matrix x = input;
  for (int l = 0; l < layer_count(); ++l) x = apply_layer(l, x);
  return x;
}

Vector DenseNet::predict(std::span<const double> input) const {
  return predict(to_column(input)).col(0);
}

Matrix DenseNet::backward(const Matrix& upstream) {
  if (!has_cache_) throw UsageError("DenseNet::backward called without a cached forward pass");
  const Matrix& out = cache_.back();
  if (upstream.rows() != out.rows() || upstream.cols() != out.cols())
    throw ShapeError("DenseNet::backward upstream gradient does not match the output shape");

  Matrix delta = upstream;
  for (int l = layer_count() - 1; l >= 0; --l) {
    const Matrix& y = cache_[l + 1];
    switch (activations_[l]) {
      case Activation::Identity: break;
      case Activation::ReLU: delta = (y.array() > 0.0).select(delta, 0.0); break;
      case Activation::Sigmoid: delta = delta.cwiseProduct((y.array() * (1.0 - y.array())).matrix()); break;
      case Activation::Softmax: {
        // dz = (1/tau) * y * (dy - <y, dy>) per column.
        const Eigen::RowVectorXd inner = (y.cwiseProduct(delta)).colwise().sum();
        delta = (y.array() * (delta.rowwise() - inner).array()).matrix() / temperature_;
        break;
      }
    }
    const Matrix& x = cache_[l];
    const int out_n = sizes_[l + 1];
    const int in_n = sizes_[l];
    Eigen::Map<Matrix> dW(grads_.data() + weight_offset(l), out_n, in_n);
    Eigen::Map<Vector> db(grads_.data() + weight_offset(l) + static_cast<std::size_t>(out_n) * in_n,
                          out_n);
    dW.noalias() += delta * x.transpose();
    db += delta.rowwise().sum();
    Matrix next = weights(l).transpose() * delta;
    delta = std::move(next);
  }
  return delta;
}

std::vector<std::uint8_t> DenseNet::relu_pattern(const Matrix& input) const {
  check_input(input, input_size());
  std::vector<std::uint8_t> pattern;
  Matrix x = input;
  for (int l = 0; l < layer_count(); ++l) {
    if (activations_[l] == Activation::ReLU) {
      Matrix z = weights(l) * x;
      z.colwise() += bias(l);
      for (Eigen::Index i = 0; i < z.size(); ++i) pattern.push_back(z.data()[i] > 0.0 ? 1 : 0);
    }
    x = apply_layer(l, x);
  }
  return pattern;
}

void DenseNet::copy_parameters_from(const DenseNet& other) {
  if (other.sizes_ != sizes_ || other.activations_ != activations_)
    throw ShapeError("copy_parameters_from requires identical architectures");
  params_ = other.params_;
}

bool DenseNet::operator==(const DenseNet& other) const {
  return sizes_ == other.sizes_ && activations_ == other.activations_ &&
         temperature_ == other.temperature_ && params_ == other.params_;
}

}  // namespace hdw::nn
