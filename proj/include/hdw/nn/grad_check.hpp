#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hdw/common/random.hpp"
#include "hdw/nn/dense_net.hpp"

namespace hdw::nn {

struct GradCheckOptions {
  double epsilon = 1e-5;
  double tolerance = 1e-4;
  /// Coordinates checked by central differences; 0 means all of them.
  std::size_t max_coordinates = 0;
  /// Extra random-direction checks covering the whole gradient at once.
  int directions = 4;
};

struct GradCheckResult {
  double relative_error = 0.0;  // max over coordinate and directional checks
  std::size_t coordinates_checked = 0;
  std::size_t kinks_skipped = 0;
  bool passed = false;
};

/// A differentiable scalar function of some parameter blocks, described by
/// callbacks. compute_gradients() must overwrite the gradient blocks with the
/// analytic gradient at the current parameters. pattern() (optional) returns
/// the ReLU on/off signature; perturbations that change it straddle a kink
/// where central differences are meaningless, so they are skipped.
struct GradientProbe {
  std::vector<std::span<double>> parameters;
  std::vector<std::span<const double>> gradients;
  std::function<double()> loss;
  std::function<void()> compute_gradients;
  std::function<std::vector<std::uint8_t>()> pattern;
};

/// ||a - n|| / (||a|| + ||n||), 0 when both vanish.
double relative_error(std::span<const double> analytic, std::span<const double> numeric);

GradCheckResult check_gradients(const GradientProbe& probe, const GradCheckOptions& opts,
                                Rng& rng);

/// Checks a single network under the loss L = <c, net(x)> for a random c,
/// covering both parameter and input gradients.
GradCheckResult check_network_gradients(DenseNet& net, std::span<const double> input,
                                        const GradCheckOptions& opts, Rng& rng);

}  // namespace hdw::nn
