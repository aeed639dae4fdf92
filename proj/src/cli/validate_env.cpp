#include "hdw/cli/validate_env.hpp"

#include <ostream>

#include "hdw/env/channel.hpp"

namespace hdw::cli {

EnvReport validate_env(const env::ScenarioConfig& base, std::uint64_t seed, int max_slots) {
  env::ScenarioConfig cfg = base;
  cfg.seed = seed;
  env::validate(cfg);
  auto world = env::init_world(cfg);
  Rng policy = make_stream(seed, "validate-policy");

  EnvReport r;
  long served = 0;
  while (r.slots < max_slots) {
    if (env::is_terminal(world, cfg) != env::Termination::Running) break;
    const auto assoc = env::associate_users(world, cfg);
    for (int u = 0; u < cfg.uav_count; ++u) {
      if (!world.uavs[u].alive) continue;
      const auto mask = env::action_mask(world, u);
      int legal[env::kActionCount];
      int n = 0;
      for (int a = 0; a < env::kActionCount; ++a)
        if (mask[a]) legal[n++] = a;
      const int pick = legal[std::uniform_int_distribution<int>(0, n - 1)(policy)];
      if (!env::apply_uav_move(world, u, static_cast<env::Action>(pick))) ++r.blocked_moves;
      env::capture_cell(world, u);
    }
    env::serve_users(world, assoc, cfg);
    env::consume_energy(world, cfg);
    env::advance_users(world, cfg);
    env::audit_constraints(world, assoc, cfg);
    served += static_cast<long>(assoc.served_count());
    ++r.audits;
    ++r.slots;
  }
  r.termination = env::is_terminal(world, cfg);
  const auto cr = env::completion_ratios(world);
  r.coverage = cr.coverage;
  r.comm = cr.comm;
  double e = 0.0;
  for (const auto& u : world.uavs) e += u.energy_used;
  r.energy_per_uav = world.uavs.empty() ? 0.0 : e / static_cast<double>(world.uavs.size());
  r.mean_served = r.slots > 0 ? static_cast<double>(served) / r.slots : 0.0;
  return r;
}

void print_report(std::ostream& os, const EnvReport& r) {
  const char* term = r.termination == env::Termination::Success           ? "success"
                     : r.termination == env::Termination::EnergyExhausted ? "energy-exhausted"
                                                                          : "running";
  os << "slots " << r.slots << "  termination " << term << '\n'
     << "coverage " << r.coverage << "  comm " << r.comm << '\n'
     << "energy/uav " << r.energy_per_uav << " J  served/slot " << r.mean_served
     << "  blocked moves " << r.blocked_moves << '\n'
     << "audits passed " << r.audits << '\n';
}

}  // namespace hdw::cli
