#pragma once

#include <ostream>

#include "hdw/env/world.hpp"

namespace hdw::env {

/// Writes one JSON-lines record: {"t", "uavs": [[row, col], ...], "C", "R", "energy": [...]}.
void write_trace_line(std::ostream& os, const WorldState& world);

}  // namespace hdw::env
