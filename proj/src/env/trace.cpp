#include "hdw/env/trace.hpp"

#include <json.hpp>

namespace hdw::env {

void write_trace_line(std::ostream& os, const WorldState& world) {
  nlohmann::json j;
  j["t"] = world.slot;
  auto cells = nlohmann::json::array();
  auto energy = nlohmann::json::array();
  for (const auto& u : world.uavs) {
    cells.push_back({u.cell.row, u.cell.col});
    energy.push_back(u.energy_used);
  }
  const auto r = completion_ratios(world);
  j["uavs"] = std::move(cells);
  j["C"] = r.coverage;
  j["R"] = r.comm;
  j["energy"] = std::move(energy);
  os << j.dump() << '\n';
}

}  // namespace hdw::env
