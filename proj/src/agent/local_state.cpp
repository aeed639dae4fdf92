#include "hdw/agent/local_state.hpp"

#include <algorithm>

namespace hdw::agent {

int local_state_size(const env::ScenarioConfig& cfg) {
  const int m = cfg.uav_count;
  const int per_block = 3 * cfg.subchannels;
  return 2 + per_block + 2 * (m - 1) + per_block * (m - 1) + 9;
}

namespace {

void append_users(std::vector<double>& out, const env::WorldState& world,
                  const env::Association& assoc, int uav, const env::ScenarioConfig& cfg) {
  std::vector<int> ids;
  if (uav < static_cast<int>(assoc.per_uav.size())) {
    for (const auto& link : assoc.per_uav[static_cast<std::size_t>(uav)]) ids.push_back(link.user);
  }
  std::sort(ids.begin(), ids.end());
  const double qscale = cfg.init_demand > 0.0 ? 1.0 / cfg.init_demand : 0.0;
  for (int slot = 0; slot < cfg.subchannels; ++slot) {
    if (slot < static_cast<int>(ids.size())) {
      const auto& u = world.users[static_cast<std::size_t>(ids[static_cast<std::size_t>(slot)])];
      out.push_back(u.x / cfg.area_width());
      out.push_back(u.y / cfg.area_height());
      out.push_back(u.queue * qscale);
    } else {
      out.insert(out.end(), 3, 0.0);
    }
  }
}

void append_position(std::vector<double>& out, const env::UavState& uav,
                     const env::ScenarioConfig& cfg) {
  const auto p = env::cell_center(uav.cell, cfg);
  out.push_back(p[0] / cfg.area_width());
  out.push_back(p[1] / cfg.area_height());
}

}  // namespace

std::vector<double> encode_local_state(const env::WorldState& world, int uav_id,
                                       const env::Association& assoc,
                                       const env::ScenarioConfig& cfg) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(local_state_size(cfg)));
  const auto& self = world.uavs.at(static_cast<std::size_t>(uav_id));

  append_position(out, self, cfg);
  append_users(out, world, assoc, uav_id, cfg);
  for (int k = 0; k < static_cast<int>(world.uavs.size()); ++k) {
    if (k != uav_id) append_position(out, world.uavs[static_cast<std::size_t>(k)], cfg);
  }
  for (int k = 0; k < static_cast<int>(world.uavs.size()); ++k) {
    if (k != uav_id) append_users(out, world, assoc, k, cfg);
  }
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc) {
      const env::GridCell c{self.cell.row + dr, self.cell.col + dc};
      out.push_back(!world.coverage.in_bounds(c) || world.coverage.covered(c) ? 1.0 : 0.0);
    }
  }
  return out;
}

}  // namespace hdw::agent
