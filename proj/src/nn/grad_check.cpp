#include "hdw/nn/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hdw/common/errors.hpp"

namespace hdw::nn {

double relative_error(std::span<const double> analytic, std::span<const double> numeric) {
  double diff = 0.0;
  double na = 0.0;
  double nn = 0.0;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    diff += (analytic[i] - numeric[i]) * (analytic[i] - numeric[i]);
    na += analytic[i] * analytic[i];
    nn += numeric[i] * numeric[i];
  }
  const double denom = std::sqrt(na) + std::sqrt(nn);
  return denom > 0.0 ? std::sqrt(diff) / denom : 0.0;
}

GradCheckResult check_gradients(const GradientProbe& probe, const GradCheckOptions& opts,
                                Rng& rng) {
  if (probe.parameters.size() != probe.gradients.size())
    throw ShapeError("gradient probe: parameter and gradient block counts differ");

  probe.compute_gradients();
  std::vector<double> analytic;
  std::vector<std::pair<std::size_t, std::size_t>> index;  // (block, offset)
  for (std::size_t b = 0; b < probe.gradients.size(); ++b) {
    if (probe.gradients[b].size() != probe.parameters[b].size())
      throw ShapeError("gradient probe: block size mismatch");
    for (std::size_t i = 0; i < probe.gradients[b].size(); ++i) {
      analytic.push_back(probe.gradients[b][i]);
      index.emplace_back(b, i);
    }
  }
  const auto base_pattern = probe.pattern ? probe.pattern() : std::vector<std::uint8_t>{};
  auto crosses_kink = [&] { return probe.pattern && probe.pattern() != base_pattern; };

  std::vector<std::size_t> order(analytic.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (opts.max_coordinates > 0 && opts.max_coordinates < order.size()) {
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(opts.max_coordinates);
    std::sort(order.begin(), order.end());
  }

  GradCheckResult result;
  const double eps = opts.epsilon;
  std::vector<double> a_sel;
  std::vector<double> n_sel;
  for (std::size_t k : order) {
    auto [b, i] = index[k];
    double& p = probe.parameters[b][i];
    const double saved = p;
    p = saved + eps;
    const double up = probe.loss();
    const bool kink_up = crosses_kink();
    p = saved - eps;
    const double down = probe.loss();
    const bool kink_down = crosses_kink();
    p = saved;
    if (kink_up || kink_down) {
      ++result.kinks_skipped;
      continue;
    }
    a_sel.push_back(analytic[k]);
    n_sel.push_back((up - down) / (2.0 * eps));
  }
  result.coordinates_checked = a_sel.size();
  result.relative_error = relative_error(a_sel, n_sel);

  std::vector<double> a_dir;
  std::vector<double> n_dir;
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int d = 0; d < opts.directions; ++d) {
    std::vector<double> dir(analytic.size());
    for (double& v : dir) v = normal(rng);
    const double norm = std::sqrt(std::inner_product(dir.begin(), dir.end(), dir.begin(), 0.0));
    for (double& v : dir) v /= norm;
    auto shift = [&](double scale) {
      for (std::size_t k = 0; k < dir.size(); ++k)
        probe.parameters[index[k].first][index[k].second] += scale * dir[k];
    };
    std::vector<double> saved;
    saved.reserve(dir.size());
    for (auto [b, i] : index) saved.push_back(probe.parameters[b][i]);
    auto restore = [&] {
      for (std::size_t k = 0; k < dir.size(); ++k)
        probe.parameters[index[k].first][index[k].second] = saved[k];
    };
    shift(eps);
    const double up = probe.loss();
    const bool kink_up = crosses_kink();
    restore();
    shift(-eps);
    const double down = probe.loss();
    const bool kink_down = crosses_kink();
    restore();
    if (kink_up || kink_down) {
      ++result.kinks_skipped;
      continue;
    }
    a_dir.push_back(std::inner_product(analytic.begin(), analytic.end(), dir.begin(), 0.0));
    n_dir.push_back((up - down) / (2.0 * eps));
  }
  result.relative_error = std::max(result.relative_error, relative_error(a_dir, n_dir));
  result.passed = result.relative_error <= opts.tolerance;
  return result;
}

GradCheckResult check_network_gradients(DenseNet& net, std::span<const double> input,
                                        const GradCheckOptions& opts, Rng& rng) {
  Matrix x = to_column(input);
  Matrix c(net.output_size(), 1);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = normal(rng);

  std::vector<double> input_grad(input.size());
  GradientProbe probe;
  probe.parameters = {net.parameters(), std::span<double>(x.data(), static_cast<std::size_t>(x.size()))};
  probe.gradients = {net.gradients(), input_grad};
  probe.loss = [&] { return net.predict(x).cwiseProduct(c).sum(); };
  probe.compute_gradients = [&] {
    net.zero_gradients();
    net.forward(x);
    const Matrix dx = net.backward(c);
    std::copy(dx.data(), dx.data() + dx.size(), input_grad.begin());
  };
  probe.pattern = [&] { return net.relu_pattern(x); };
  auto result = check_gradients(probe, opts, rng);
  net.zero_gradients();
  return result;
}

}  // namespace hdw::nn
