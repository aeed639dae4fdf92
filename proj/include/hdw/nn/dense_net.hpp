#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hdw/common/random.hpp"

namespace hdw::nn {

using Matrix = Eigen::MatrixXd;  // features x batch, column per sample
using Vector = Eigen::VectorXd;

enum class Activation : std::uint8_t { Identity = 0, ReLU = 1, Sigmoid = 2, Softmax = 3 };

/// Fully-connected network with a flat parameter vector and a same-shaped
/// gradient buffer. Layer l stores W_l (out x in, column-major) followed by b_l.
/// Softmax is only allowed on the output layer and divides logits by the
/// temperature before normalizing.
class DenseNet {
 public:
  DenseNet() = default;
  DenseNet(std::vector<int> layer_sizes, std::vector<Activation> activations,
           double temperature = 1.0);

  /// Uniform fan-in init: He bound for ReLU layers, Xavier bound otherwise. Biases zero.
  void initialize(Rng& rng);

  [[nodiscard]] int input_size() const { return sizes_.front(); }
  [[nodiscard]] int output_size() const { return sizes_.back(); }
  [[nodiscard]] int layer_count() const { return static_cast<int>(activations_.size()); }
  [[nodiscard]] const std::vector<int>& layer_sizes() const { return sizes_; }
  [[nodiscard]] const std::vector<Activation>& activations() const { return activations_; }
  [[nodiscard]] double temperature() const { return temperature_; }
  void set_temperature(double tau);

  [[nodiscard]] std::span<double> parameters() { return params_; }
  [[nodiscard]] std::span<const double> parameters() const { return params_; }
  [[nodiscard]] std::span<double> gradients() { return grads_; }
  [[nodiscard]] std::span<const double> gradients() const { return grads_; }
  void zero_gradients();

  /// Forward pass that keeps the activations needed by backward().
  const Matrix& forward(const Matrix& input);
  Vector forward(std::span<const double> input);

  /// Forward pass without touching the cache.
  [[nodiscard]] Matrix predict(const Matrix& input) const;
  [[nodiscard]] Vector predict(std::span<const double> input) const;

  /// Accumulates dLoss/dParams into the gradient buffer and returns dLoss/dInput.
  /// Throws UsageError without a preceding forward().
  Matrix backward(const Matrix& upstream);

  /// ReLU on/off pattern of every hidden unit for every sample, flattened.
  /// Used by the gradient checker to skip finite differences across kinks.
  [[nodiscard]] std::vector<std::uint8_t> relu_pattern(const Matrix& input) const;

  /// Copies parameters from a network of identical shape.
  void copy_parameters_from(const DenseNet& other);

  bool operator==(const DenseNet& other) const;

 private:
  [[nodiscard]] std::size_t weight_offset(int layer) const { return offsets_[layer]; }
  [[nodiscard]] Eigen::Map<const Matrix> weights(int layer) const;
  [[nodiscard]] Eigen::Map<const Vector> bias(int layer) const;
  Matrix apply_layer(int layer, const Matrix& x) const;

  std::vector<int> sizes_;
  std::vector<Activation> activations_;
  double temperature_ = 1.0;
  std::vector<std::size_t> offsets_;
  // Aligned so Eigen's vectorized kernels split the maps the same way on
  // every allocation; otherwise reductions can round differently run to run.
  std::vector<double, Eigen::aligned_allocator<double>> params_;
  std::vector<double, Eigen::aligned_allocator<double>> grads_;

  // cache_[0] is the input, cache_[l + 1] the output of layer l.
  std::vector<Matrix> cache_;
  bool has_cache_ = false;
};

/// Column-wise softmax of logits / temperature, max-shifted for stability.
Matrix softmax(const Matrix& logits, double temperature);

Matrix to_column(std::span<const double> values);

}  // namespace hdw::nn
