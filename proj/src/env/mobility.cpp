#include "hdw/env/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hdw::env {

namespace {

// Folds a coordinate back into [0, extent], reporting whether it was mirrored.
double reflect(double v, double extent, bool& mirrored) {
  mirrored = false;
  if (extent <= 0.0) return 0.0;
  const double period = 2.0 * extent;
  double r = std::fmod(v, period);
  if (r < 0.0) r += period;
  if (r > extent) r = period - r;
  mirrored = (v < 0.0 || v > extent) &&
             static_cast<long long>(std::floor(v / extent)) % 2 != 0;
  return r;
}

}  // namespace

UserState step_user_mobility(const UserState& user, const ScenarioConfig& cfg,
                             double speed_noise, double heading_noise) {
  const auto& mc = cfg.mobility;
  UserState next = user;
  next.speed = mc.memory * user.speed + (1.0 - mc.memory) * mc.mean_speed + speed_noise;
  next.speed = std::clamp(next.speed, 0.0, 3.0 * mc.mean_speed);
  next.heading = mc.memory * user.heading + (1.0 - mc.memory) * mc.mean_heading + heading_noise;

  const double x = user.x + next.speed * std::cos(next.heading) * cfg.slot_time;
  const double y = user.y + next.speed * std::sin(next.heading) * cfg.slot_time;
  bool flip_x = false;
  bool flip_y = false;
  next.x = reflect(x, cfg.area_width(), flip_x);
  next.y = reflect(y, cfg.area_height(), flip_y);
  if (flip_x) next.heading = std::numbers::pi - next.heading;
  if (flip_y) next.heading = -next.heading;
  return next;
}

UserState step_user_mobility(const UserState& user, const ScenarioConfig& cfg, Rng& rng) {
  const double wv = gaussian(rng, 0.0, cfg.mobility.sigma_speed);
  const double wt = gaussian(rng, 0.0, cfg.mobility.sigma_heading);
  return step_user_mobility(user, cfg, wv, wt);
}

void advance_users(WorldState& world, const ScenarioConfig& cfg) {
  for (auto& u : world.users) u = step_user_mobility(u, cfg, world.mobility_rng);
  ++world.slot;
}

}  // namespace hdw::env
