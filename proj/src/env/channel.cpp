#include "hdw/env/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hdw::env {

double path_gain(double horizontal_distance, const ScenarioConfig& cfg) {
  const double d2 = cfg.altitude * cfg.altitude + horizontal_distance * horizontal_distance;
  return cfg.ref_gain / std::pow(d2, cfg.path_loss_exp / 2.0);
}

std::complex<double> rician_coefficient(std::complex<double> scattered, double rician_k) {
  const double los = std::sqrt(rician_k / (rician_k + 1.0));
  const double nlos = std::sqrt(1.0 / (rician_k + 1.0));
  return los * std::complex<double>(1.0, 0.0) + nlos * scattered;
}

ChannelSample channel_gain(double horizontal_distance, std::complex<double> scattered,
                           const ScenarioConfig& cfg) {
  const double beta = path_gain(horizontal_distance, cfg);
  const double fading = std::norm(rician_coefficient(scattered, cfg.rician_k));
  ChannelSample s;
  s.power = beta * fading;
  s.magnitude = std::sqrt(s.power);
  return s;
}

namespace {

std::complex<double> draw_scattered(Rng& rng) {
  // CN(0, 1): independent real and imaginary parts with variance 1/2 each.
  const double sd = std::sqrt(0.5);
  const double re = gaussian(rng, 0.0, sd);
  const double im = gaussian(rng, 0.0, sd);
  return {re, im};
}

double distance_to(const UavState& uav, const UserState& user, const ScenarioConfig& cfg) {
  const auto p = cell_center(uav.cell, cfg);
  return std::hypot(p[0] - user.x, p[1] - user.y);
}

}  // namespace

ChannelSample channel_gain(const UavState& uav, const UserState& user, const ScenarioConfig& cfg,
                           Rng& rng) {
  return channel_gain(distance_to(uav, user, cfg), draw_scattered(rng), cfg);
}

double achievable_rate(double gain_power, const ScenarioConfig& cfg) {
  const double snr = gain_power * cfg.tx_power / cfg.noise_power;
  return cfg.subchannel_bandwidth() * std::log2(1.0 + snr);
}

ChannelMatrix draw_channels(WorldState& world, const ScenarioConfig& cfg) {
  ChannelMatrix out(world.uavs.size(), std::vector<ChannelSample>(world.users.size()));
  for (std::size_t m = 0; m < world.uavs.size(); ++m) {
    for (std::size_t n = 0; n < world.users.size(); ++n) {
      const auto s = channel_gain(world.uavs[m], world.users[n], cfg, world.channel_rng);
      if (world.uavs[m].alive) out[m][n] = s;
    }
  }
  return out;
}

Association associate_users(const WorldState& world, const ChannelMatrix& channels,
                            const ScenarioConfig& cfg) {
  const std::size_t uav_count = world.uavs.size();
  std::vector<std::vector<int>> offers(uav_count);

  for (std::size_t n = 0; n < world.users.size(); ++n) {
    if (world.users[n].queue <= 0.0) continue;
    int best = -1;
    double best_power = 0.0;
    for (std::size_t m = 0; m < uav_count; ++m) {
      if (!world.uavs[m].alive) continue;
      const auto& s = channels[m][n];
      if (s.magnitude < cfg.gain_threshold) continue;
      if (best < 0 || s.power > best_power) {  // strict: ties keep the lower id
        best = static_cast<int>(m);
        best_power = s.power;
      }
    }
    if (best >= 0) offers[static_cast<std::size_t>(best)].push_back(static_cast<int>(n));
  }

  Association assoc;
  assoc.per_uav.resize(uav_count);
  const auto cap = static_cast<std::size_t>(cfg.subchannels);
  for (std::size_t m = 0; m < uav_count; ++m) {
    auto& users = offers[m];
    std::stable_sort(users.begin(), users.end(), [&](int a, int b) {
      return channels[m][static_cast<std::size_t>(a)].power >
             channels[m][static_cast<std::size_t>(b)].power;
    });
    if (users.size() > cap) users.resize(cap);
    std::sort(users.begin(), users.end());
    for (int n : users) {
      const double g = channels[m][static_cast<std::size_t>(n)].power;
      assoc.per_uav[m].push_back({n, g, achievable_rate(g, cfg)});
    }
  }
  return assoc;
}

Association associate_users(WorldState& world, const ScenarioConfig& cfg) {
  const auto channels = draw_channels(world, cfg);
  return associate_users(world, channels, cfg);
}

}  // namespace hdw::env
