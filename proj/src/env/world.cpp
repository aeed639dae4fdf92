#include "hdw/env/world.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "hdw/common/errors.hpp"

namespace hdw::env {

GridCell neighbor(GridCell cell, Action action) {
  switch (action) {
    case Action::North: return {cell.row - 1, cell.col};
    case Action::South: return {cell.row + 1, cell.col};
    case Action::East: return {cell.row, cell.col + 1};
    case Action::West: return {cell.row, cell.col - 1};
  }
  return cell;
}

CoverageGrid::CoverageGrid(int rows, int cols)
    : rows_(rows), cols_(cols), cells_(static_cast<std::size_t>(rows) * cols, 0) {}

int CoverageGrid::matrix_sum() const {
  return std::accumulate(cells_.begin(), cells_.end(), 0);
}

bool CoverageGrid::mark(GridCell c) {
  auto& v = cells_[index(c)];
  if (v != 0) return false;
  v = 1;
  ++covered_count_;
  return true;
}

std::size_t Association::served_count() const {
  std::size_t n = 0;
  for (const auto& links : per_uav) n += links.size();
  return n;
}

double slot_energy(const ScenarioConfig& cfg) { return cfg.prop_power * cfg.slot_time; }

std::array<double, 2> cell_center(GridCell cell, const ScenarioConfig& cfg) {
  return {(cell.col + 0.5) * cfg.cell_side, (cell.row + 0.5) * cfg.cell_side};
}

WorldState init_world(const ScenarioConfig& cfg) {
  validate(cfg);
  WorldState w;
  w.coverage = CoverageGrid(cfg.grid_h, cfg.grid_w);
  w.channel_rng = make_stream(cfg.seed, "env.channel");
  w.mobility_rng = make_stream(cfg.seed, "env.mobility");
  Rng placement = make_stream(cfg.seed, "env.placement");

  const bool can_fly = slot_energy(cfg) <= cfg.energy_budget;
  w.uavs.resize(static_cast<std::size_t>(cfg.uav_count));
  for (int m = 0; m < cfg.uav_count; ++m) {
    w.uavs[m].cell = {m / cfg.grid_w, m % cfg.grid_w};
    w.uavs[m].alive = can_fly;
  }

  std::uniform_real_distribution<double> ux(0.0, cfg.area_width());
  std::uniform_real_distribution<double> uy(0.0, cfg.area_height());
  w.users.resize(static_cast<std::size_t>(cfg.user_count));
  for (auto& u : w.users) {
    u.x = ux(placement);
    u.y = uy(placement);
    u.speed = cfg.mobility.mean_speed;
    u.heading = cfg.mobility.mean_heading;
    u.queue = cfg.init_demand;
  }
  w.initial_demand_total = cfg.init_demand * cfg.user_count;
  return w;
}

bool apply_uav_move(WorldState& world, int uav_id, Action action) {
  auto& uav = world.uavs.at(static_cast<std::size_t>(uav_id));
  if (!uav.alive) return false;
  const GridCell target = neighbor(uav.cell, action);
  if (!world.coverage.in_bounds(target)) return false;
  for (std::size_t k = 0; k < world.uavs.size(); ++k) {
    if (static_cast<int>(k) == uav_id) continue;
    if (world.uavs[k].alive && world.uavs[k].cell == target) return false;
  }
  uav.cell = target;
  return true;
}

std::array<bool, kActionCount> action_mask(const WorldState& world, int uav_id) {
  const auto& uav = world.uavs.at(static_cast<std::size_t>(uav_id));
  std::array<bool, kActionCount> mask{};
  bool any = false;
  for (int a = 0; a < kActionCount; ++a) {
    mask[a] = world.coverage.in_bounds(neighbor(uav.cell, static_cast<Action>(a)));
    any = any || mask[a];
  }
  if (!any) mask.fill(true);
  return mask;
}

int capture_cell(WorldState& world, int uav_id) {
  const auto& uav = world.uavs.at(static_cast<std::size_t>(uav_id));
  if (!uav.alive) return 0;
  return world.coverage.mark(uav.cell) ? 1 : 0;
}

double serve_users(WorldState& world, const Association& assoc, const ScenarioConfig& cfg) {
  double uploaded = 0.0;
  for (const auto& links : assoc.per_uav) {
    for (const auto& link : links) {
      auto& user = world.users.at(static_cast<std::size_t>(link.user));
      const double drained = std::min(user.queue, link.rate * cfg.comm_time);
      user.queue -= drained;
      uploaded += drained;
    }
  }
  return uploaded;
}

void consume_energy(WorldState& world, const ScenarioConfig& cfg) {
  const double per_slot = slot_energy(cfg);
  for (auto& uav : world.uavs) {
    if (!uav.alive) continue;
    uav.energy_used += per_slot;
    if (uav.energy_used + per_slot > cfg.energy_budget) uav.alive = false;
  }
}

CompletionRatios completion_ratios(const WorldState& world) {
  CompletionRatios r;
  const int cells = world.coverage.rows() * world.coverage.cols();
  r.coverage = cells > 0 ? static_cast<double>(world.coverage.covered_count()) / cells : 0.0;
  if (world.initial_demand_total <= 0.0) {
    r.comm = 1.0;
  } else {
    double remaining = 0.0;
    for (const auto& u : world.users) remaining += u.queue;
    r.comm = 1.0 - remaining / world.initial_demand_total;
  }
  return r;
}

Termination is_terminal(const WorldState& world, const ScenarioConfig& cfg) {
  const auto r = completion_ratios(world);
  const bool done = cfg.strict_completion
                        ? (r.coverage >= 1.0 && r.comm >= 1.0)
                        : (r.coverage >= cfg.rho_cov && r.comm >= cfg.rho_comm);
  if (done) return Termination::Success;
  const bool any_alive = std::any_of(world.uavs.begin(), world.uavs.end(),
                                     [](const UavState& u) { return u.alive; });
  return any_alive ? Termination::Running : Termination::EnergyExhausted;
}

std::array<double, 2> step_rewards(CompletionRatios prev, CompletionRatios next) {
  return {next.coverage - prev.coverage, next.comm - prev.comm};
}

std::array<double, 2> step_rewards(const WorldState& prev, const WorldState& next) {
  return step_rewards(completion_ratios(prev), completion_ratios(next));
}

void audit_constraints(const WorldState& world, const Association& assoc,
                       const ScenarioConfig& cfg) {
  std::ostringstream err;
  for (std::size_t m = 0; m < world.uavs.size(); ++m) {
    if (world.uavs[m].energy_used > cfg.energy_budget) {
      err << "energy budget exceeded by UAV " << m << " at slot " << world.slot << " ("
          << world.uavs[m].energy_used << " J > " << cfg.energy_budget << " J)";
      throw InvariantViolation(err.str());
    }
  }
  for (std::size_t m = 0; m < assoc.per_uav.size(); ++m) {
    if (assoc.per_uav[m].size() > static_cast<std::size_t>(cfg.subchannels)) {
      err << "UAV " << m << " serves " << assoc.per_uav[m].size() << " users at slot "
          << world.slot << " with only " << cfg.subchannels << " subchannels";
      throw InvariantViolation(err.str());
    }
    for (const auto& link : assoc.per_uav[m]) {
      if (std::sqrt(link.gain_power) < cfg.gain_threshold) {
        err << "QoS violated for UAV " << m << " user " << link.user << " at slot "
            << world.slot;
        throw InvariantViolation(err.str());
      }
    }
  }
  for (std::size_t i = 0; i < world.uavs.size(); ++i) {
    if (!world.uavs[i].alive) continue;
    for (std::size_t j = i + 1; j < world.uavs.size(); ++j) {
      if (world.uavs[j].alive && world.uavs[i].cell == world.uavs[j].cell) {
        err << "UAVs " << i << " and " << j << " share cell (" << world.uavs[i].cell.row
            << ", " << world.uavs[i].cell.col << ") at slot " << world.slot;
        throw InvariantViolation(err.str());
      }
    }
  }
  if (world.coverage.covered_count() != world.coverage.matrix_sum()) {
    err << "coverage count drifted from the matrix sum at slot " << world.slot;
    throw InvariantViolation(err.str());
  }
}

}  // namespace hdw::env
