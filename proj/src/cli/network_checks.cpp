#include "hdw/cli/network_checks.hpp"

#include <algorithm>

#include "hdw/agent/local_state.hpp"
#include "hdw/weighting/episode_ac.hpp"
#include "hdw/weighting/step_weight.hpp"

namespace hdw::cli {

nn::GradCheckResult check_q_network(agent::MultiHeadQNet& q, std::span<const double> input,
                                    const nn::GradCheckOptions& opts, Rng& rng) {
  auto& bb = q.backbone();
  auto& hc = q.head_cov();
  auto& hm = q.head_comm();
  nn::Matrix x = nn::to_column(input);
  nn::Matrix c1(hc.output_size(), 1), c2(hm.output_size(), 1);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (Eigen::Index i = 0; i < c1.size(); ++i) c1(i) = normal(rng);
  for (Eigen::Index i = 0; i < c2.size(); ++i) c2(i) = normal(rng);

  std::vector<double> input_grad(input.size());
  nn::GradientProbe probe;
  probe.parameters = {bb.parameters(), hc.parameters(), hm.parameters(),
                      std::span<double>(x.data(), static_cast<std::size_t>(x.size()))};
  probe.gradients = {bb.gradients(), hc.gradients(), hm.gradients(), input_grad};
  probe.loss = [&] {
    const nn::Matrix f = bb.predict(x);
    return hc.predict(f).cwiseProduct(c1).sum() + hm.predict(f).cwiseProduct(c2).sum();
  };
  probe.compute_gradients = [&] {
    bb.zero_gradients();
    hc.zero_gradients();
    hm.zero_gradients();
    const nn::Matrix f = bb.forward(x);
    hc.forward(f);
    hm.forward(f);
    const nn::Matrix df = hc.backward(c1) + hm.backward(c2);
    const nn::Matrix dx = bb.backward(df);
    std::copy(dx.data(), dx.data() + dx.size(), input_grad.begin());
  };
  probe.pattern = [&] {
    auto p = bb.relu_pattern(x);
    const nn::Matrix f = bb.predict(x);
    const auto a = hc.relu_pattern(f);
    const auto b = hm.relu_pattern(f);
    p.insert(p.end(), a.begin(), a.end());
    p.insert(p.end(), b.begin(), b.end());
    return p;
  };
  auto result = nn::check_gradients(probe, opts, rng);
  bb.zero_gradients();
  hc.zero_gradients();
  hm.zero_gradients();
  return result;
}

namespace {

std::vector<double> random_input(int n, Rng& rng) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& e : v) e = uniform01(rng);
  return v;
}

template <class Check>
NetworkCheck run(const std::string& name, int size, int inputs, Rng& rng, Check check) {
  NetworkCheck out;
  out.name = name;
  out.passed = true;
  for (int i = 0; i < inputs; ++i) {
    const auto x = random_input(size, rng);
    const auto r = check(x);
    out.worst_error = std::max(out.worst_error, r.relative_error);
    out.coordinates += r.coordinates_checked;
    out.kinks_skipped += r.kinks_skipped;
    out.passed = out.passed && r.passed;
    ++out.inputs;
  }
  return out;
}

}  // namespace

std::vector<NetworkCheck> check_all_networks(const harness::Config& cfg, std::uint64_t seed,
                                             int inputs, const nn::GradCheckOptions& opts) {
  Rng init = make_stream(seed, "nets");
  Rng rng = make_stream(seed, "grad-check");
  const int local = agent::local_state_size(cfg.scenario);
  agent::MultiHeadQNet q(local, cfg.dqn, init);
  weighting::EpisodeActorCritic ac(cfg.weighting, init);
  weighting::StepWeightNet step(local, cfg.weighting, init);

  std::vector<NetworkCheck> out;
  out.push_back(run("q_network", local, inputs, rng,
                    [&](const std::vector<double>& x) { return check_q_network(q, x, opts, rng); }));
  out.push_back(run("episode_actor", ac.actor().input_size(), inputs, rng, [&](const std::vector<double>& x) {
    return nn::check_network_gradients(ac.actor(), x, opts, rng);
  }));
  out.push_back(run("episode_critic", ac.critic().input_size(), inputs, rng, [&](const std::vector<double>& x) {
    return nn::check_network_gradients(ac.critic(), x, opts, rng);
  }));
  out.push_back(run("step_weight", step.net().input_size(), inputs, rng, [&](const std::vector<double>& x) {
    return nn::check_network_gradients(step.net(), x, opts, rng);
  }));
  return out;
}

}  // namespace hdw::cli
