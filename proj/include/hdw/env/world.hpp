#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hdw/common/random.hpp"
#include "hdw/env/scenario_config.hpp"

namespace hdw::env {

/// Grid coordinates. Row 0 is the northern edge; column 0 the western edge.
struct GridCell {
  int row = 0;
  int col = 0;
  bool operator==(const GridCell&) const = default;
};

enum class Action : int { North = 0, South = 1, East = 2, West = 3 };
inline constexpr int kActionCount = 4;

GridCell neighbor(GridCell cell, Action action);

struct UserState {
  double x = 0.0;  // m, along columns
  double y = 0.0;  // m, along rows (southward)
  double speed = 0.0;
  double heading = 0.0;
  double queue = 0.0;  // bits left to upload
  bool operator==(const UserState&) const = default;
};

struct UavState {
  GridCell cell;
  double energy_used = 0.0;  // J
  bool alive = true;
  bool operator==(const UavState&) const = default;
};

/// Binary capture map with a maintained count of covered cells.
class CoverageGrid {
 public:
  CoverageGrid() = default;
  CoverageGrid(int rows, int cols);

  [[nodiscard]] int rows() const { return rows_; }
  [[nodiscard]] int cols() const { return cols_; }
  [[nodiscard]] bool in_bounds(GridCell c) const {
    return c.row >= 0 && c.row < rows_ && c.col >= 0 && c.col < cols_;
  }
  [[nodiscard]] bool covered(GridCell c) const { return cells_[index(c)] != 0; }
  [[nodiscard]] int covered_count() const { return covered_count_; }
  /// Recomputes the sum of the matrix; equals covered_count() by invariant.
  [[nodiscard]] int matrix_sum() const;

  /// Marks a cell; returns true iff it was previously uncovered.
  bool mark(GridCell c);

  bool operator==(const CoverageGrid&) const = default;

 private:
  [[nodiscard]] std::size_t index(GridCell c) const {
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(c.col);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::uint8_t> cells_;
  int covered_count_ = 0;
};

struct WorldState {
  int slot = 0;
  CoverageGrid coverage;
  std::vector<UavState> uavs;
  std::vector<UserState> users;
  double initial_demand_total = 0.0;
  Rng channel_rng;
  Rng mobility_rng;

  bool operator==(const WorldState&) const = default;
};

struct ServedLink {
  int user = 0;
  double gain_power = 0.0;  // |h|^2
  double rate = 0.0;        // bits/s
};

/// Per-UAV service lists for one slot.
struct Association {
  std::vector<std::vector<ServedLink>> per_uav;
  [[nodiscard]] std::size_t served_count() const;
};

enum class Termination { Running, Success, EnergyExhausted };

struct CompletionRatios {
  double coverage = 0.0;
  double comm = 0.0;
};

/// Builds the initial world. UAVs fill distinct cells row-major from (0, 0);
/// users are placed uniformly with full queues. Nothing is captured yet.
WorldState init_world(const ScenarioConfig& cfg);

/// Applies one move. Blocked (returns false) when the target leaves the grid
/// or is held by another alive UAV; a blocked UAV hovers in place.
bool apply_uav_move(WorldState& world, int uav_id, Action action);

/// Legal actions for a UAV: moves that stay inside the grid. When none exist
/// (1x1 grid) every action is legal and resolves to a blocked hover.
std::array<bool, kActionCount> action_mask(const WorldState& world, int uav_id);

/// Marks the cell under the UAV. Returns 1 iff newly covered.
int capture_cell(WorldState& world, int uav_id);

/// Drains served queues over comm_time, clamped at zero. Returns bits uploaded.
double serve_users(WorldState& world, const Association& assoc, const ScenarioConfig& cfg);

/// Charges one slot of propulsion energy and retires UAVs that cannot afford
/// another slot.
void consume_energy(WorldState& world, const ScenarioConfig& cfg);

/// Energy one UAV spends per slot.
double slot_energy(const ScenarioConfig& cfg);

CompletionRatios completion_ratios(const WorldState& world);

Termination is_terminal(const WorldState& world, const ScenarioConfig& cfg);

/// Per-slot objective increments (coverage, communication).
std::array<double, 2> step_rewards(const WorldState& prev, const WorldState& next);
std::array<double, 2> step_rewards(CompletionRatios prev, CompletionRatios next);

/// Advances every user one slot and the slot counter.
void advance_users(WorldState& world, const ScenarioConfig& cfg);

/// Cell-center position of a grid cell, meters.
std::array<double, 2> cell_center(GridCell cell, const ScenarioConfig& cfg);

/// Checks energy (a), QoS threshold (c) and separation (d) constraints.
/// Throws InvariantViolation with a description of the first failure.
void audit_constraints(const WorldState& world, const Association& assoc,
                       const ScenarioConfig& cfg);

}  // namespace hdw::env
