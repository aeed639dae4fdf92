// Acceptance suite: one PASS/FAIL line per criterion. Every tolerance and
// workload size is pinned here. Pass criterion numbers to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hdw/agent/action_selection.hpp"
#include "hdw/agent/q_network.hpp"
#include "hdw/cli/config_io.hpp"
#include "hdw/cli/network_checks.hpp"
#include "hdw/common/errors.hpp"
#include "hdw/env/channel.hpp"
#include "hdw/env/mobility.hpp"
#include "hdw/harness/aggregate.hpp"
#include "hdw/harness/metrics_io.hpp"
#include "hdw/harness/trainer.hpp"
#include "hdw/weighting/fusion.hpp"

using namespace hdw;
using harness::Config;
using harness::RunLog;
using harness::Variant;

namespace {

// Criterion 1
constexpr int kRateSamples = 1000;
constexpr double kRateRelTol = 1e-9;
constexpr int kRicianDraws = 100000;
constexpr double kRicianLow = 0.98;
constexpr double kRicianHigh = 1.02;
constexpr int kMobilitySteps = 10000;
constexpr double kMobilityMemory = 0.9;
constexpr double kMobilityRelTol = 0.05;
// Criterion 2
constexpr int kGradInputs = 20;
constexpr double kGradEpsilon = 1e-5;
constexpr double kGradRelTol = 1e-4;
// Criterion 3
constexpr int kFuzzSamples = 10000;
constexpr double kSimplexTol = 1e-9;
// Criterion 4
constexpr int kBellmanUpdates = 5000;
constexpr double kBellmanTol = 1e-2;
constexpr double kBellmanGamma = 0.9;
constexpr double kBellmanLearningRate = 1e-4;
// Criterion 5
constexpr int kToySeeds = 10;
constexpr int kToyRequired = 8;
constexpr int kToySlack = 1;
// Criteria 6, 7, 9
constexpr int kAblationRequired = 3;
constexpr int kFinalWindow = 10;

// Criterion 5: one UAV on a 3x3 grid, coverage only.
const char* kToyIni = R"(
[scenario]
grid_h = 3
grid_w = 3
uav_count = 1
user_count = 0
rho_cov = 1.0
rho_comm = 1.0

[weighting]
static_cov = 1.0

[dqn]
epsilon_horizon = 4000

[experiment]
variant = StaticWeight
episodes = 300
seeds = 1,2,3,4,5,6,7,8,9,10
eval_interval = 300
eval_episodes = 1
)";

// Criteria 6-9: 6x6 grid, 2 UAVs, 10 users, 20 Mbit each, 120 episodes, 5 seeds.
const char* kScaledIni = R"(
[scenario]
grid_h = 6
grid_w = 6
uav_count = 2
user_count = 10
init_demand = 20e6

[experiment]
episodes = 120
seeds = 1,2,3,4,5
eval_interval = 1
eval_episodes = 5
)";

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

template <class T>
std::string list(const std::vector<T>& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

// Audit failures seen by any run of this process (criterion 8).
int g_violations = 0;
int g_audited_runs = 0;
std::vector<std::string> g_violation_notes;

std::optional<RunLog> audited_run(const Config& cfg, Variant v, std::uint64_t seed) {
  ++g_audited_runs;
  try {
    return harness::train_run(cfg, v, seed);
  } catch (const InvariantViolation& e) {
    ++g_violations;
    g_violation_notes.push_back(e.what());
    return std::nullopt;
  }
}

// ---------------------------------------------------------------- 1

long double rate_oracle(long double gain, const env::ScenarioConfig& c) {
  const long double snr = gain * static_cast<long double>(c.tx_power) / static_cast<long double>(c.noise_power);
  return static_cast<long double>(c.bandwidth) / c.subchannels * std::log1p(snr) / std::log(2.0L);
}

Outcome physics() {
  env::ScenarioConfig c;
  Rng rng(2024);
  double worst = 0.0;
  for (int i = 0; i < kRateSamples; ++i) {
    env::ScenarioConfig ci = c;
    ci.tx_power = 0.01 + uniform01(rng);
    ci.noise_power = std::pow(10.0, -16.0 + 4.0 * uniform01(rng));
    ci.bandwidth = 1e6 + 3e7 * uniform01(rng);
    ci.subchannels = 1 + static_cast<int>(20 * uniform01(rng));
    const double d = 1000.0 * uniform01(rng);
    const double gain = env::path_gain(d, ci) * std::pow(10.0, -2.0 + 3.0 * uniform01(rng));
    const long double want = rate_oracle(gain, ci);
    const double got = env::achievable_rate(gain, ci);
    worst = std::max(worst, static_cast<double>(std::abs((got - want) / want)));
  }

  // UAV straight above the user, so |h|^2 = power / path_gain(0).
  env::WorldState w = env::init_world(c);
  env::UserState u;
  const auto center = env::cell_center(w.uavs[0].cell, c);
  u.x = center[0];
  u.y = center[1];
  Rng ch(77);
  double sum = 0.0;
  for (int i = 0; i < kRicianDraws; ++i) sum += env::channel_gain(w.uavs[0], u, c, ch).power;
  const double rician = sum / kRicianDraws / env::path_gain(0.0, c);

  env::ScenarioConfig m = c;
  m.mobility.memory = kMobilityMemory;
  m.cell_side = 1e4;  // keep boundary reflections rare
  env::UserState user;
  user.x = m.area_width() / 2;
  user.y = m.area_height() / 2;
  user.speed = m.mobility.mean_speed;
  user.heading = m.mobility.mean_heading;
  Rng mob(5);
  double speed = 0.0;
  for (int i = 0; i < kMobilitySteps; ++i) {
    user = env::step_user_mobility(user, m, mob);
    speed += user.speed;
  }
  const double mean_speed = speed / kMobilitySteps;
  const double speed_err = std::abs(mean_speed - m.mobility.mean_speed) / m.mobility.mean_speed;

  const bool pass = worst <= kRateRelTol && rician >= kRicianLow && rician <= kRicianHigh &&
                    speed_err <= kMobilityRelTol;
  return {pass, fmt("rate max rel err %.3g (<= %g), E|h|^2 = %.4f in [%g, %g], mean speed %.4f "
                    "(rel err %.4f <= %g)",
                    worst, kRateRelTol, rician, kRicianLow, kRicianHigh, mean_speed, speed_err,
                    kMobilityRelTol)};
}

// ---------------------------------------------------------------- 2

Outcome gradients() {
  nn::GradCheckOptions opts;
  opts.epsilon = kGradEpsilon;
  opts.tolerance = kGradRelTol;
  opts.max_coordinates = 256;
  const auto checks = cli::check_all_networks(cli::default_config(), 1, kGradInputs, opts);
  bool pass = checks.size() == 4;
  std::string detail;
  for (const auto& c : checks) {
    pass = pass && c.passed && c.inputs == kGradInputs && c.worst_error <= kGradRelTol;
    detail += fmt("%s %.2e; ", c.name.c_str(), c.worst_error);
  }
  return {pass, detail + fmt("%d inputs each, eps %g, tol %g", kGradInputs, kGradEpsilon, kGradRelTol)};
}

// ---------------------------------------------------------------- 3

Outcome weighting_algebra() {
  using namespace weighting;
  const FusionParams defaults;
  const TargetMixing mixing;
  Rng rng(9);
  auto u = [&] { return uniform01(rng); };
  int bad = 0;
  for (int i = 0; i < kFuzzSamples; ++i) {
    const double a = u(), b = u(), c = u(), r = u();
    const WeightPair ep = normalize({a, 1 - a});
    const WeightPair st = normalize({b, 1 - b});
    const auto f = fuse_weights(ep, st, c, r, defaults);
    const auto t = step_target(u() - 0.5, u() - 0.5, c, r, ep, mixing);
    if (!on_simplex(ep, kSimplexTol) || !on_simplex(st, kSimplexTol) ||
        !on_simplex(f.weight, kSimplexTol) || !on_simplex(t, kSimplexTol))
      ++bad;
    if (f.delta != 0.45 || f.delta < defaults.delta_min || f.delta > defaults.delta_max) ++bad;
    for (std::size_t k = 0; k < 2; ++k)
      if (f.weight[k] < std::min(ep[k], st[k]) - kSimplexTol ||
          f.weight[k] > std::max(ep[k], st[k]) + kSimplexTol)
        ++bad;
    // Off the default constants delta must still stay inside its clip range.
    const FusionParams loose{u() * 0.5, u(), 0.15, 0.45};
    const double d = fuse_weights(ep, st, c, r, loose).delta;
    if (d < 0.15 || d > 0.45) ++bad;
  }
  agent::EpsilonSchedule eps;
  const bool ends = eps(0) == 1.0 && std::abs(eps(7500) - 0.0025) <= 1e-15;
  return {bad == 0 && ends, fmt("%d fuzz samples, %d failures; eps(0)=%g eps(7500)=%g", kFuzzSamples,
                                bad, eps(0), eps(7500))};
}

// ---------------------------------------------------------------- 4

Outcome bellman() {
  // s0 --a1--> s1 pays (0, 1); staying in s1 pays (1, 0); everything else 0.
  const double rc[2][2] = {{0.0, 0.0}, {1.0, 0.0}};
  const double rm[2][2] = {{0.0, 1.0}, {0.0, 0.0}};
  auto next = [](int s, int a) { return a == 0 ? s : 1 - s; };
  double qc[2][2] = {}, qm[2][2] = {};
  for (int it = 0; it < 2000; ++it) {
    double nc[2][2], nm[2][2];
    for (int s = 0; s < 2; ++s)
      for (int a = 0; a < 2; ++a) {
        const int n = next(s, a);
        nc[s][a] = rc[s][a] + kBellmanGamma * std::max(qc[n][0], qc[n][1]);
        nm[s][a] = rm[s][a] + kBellmanGamma * std::max(qm[n][0], qm[n][1]);
      }
    std::copy(&nc[0][0], &nc[0][0] + 4, &qc[0][0]);
    std::copy(&nm[0][0], &nm[0][0] + 4, &qm[0][0]);
  }

  agent::DqnConfig cfg;
  cfg.gamma = kBellmanGamma;
  // The default rate makes Adam hover around Q* at ~3e-2; a smaller step settles.
  cfg.optimizer.learning_rate = kBellmanLearningRate;
  Rng rng(3);
  agent::MultiHeadQNet q(2, cfg, rng);
  std::vector<agent::Transition> all;
  for (int s = 0; s < 2; ++s)
    for (int a = 0; a < 2; ++a) {
      agent::Transition t;
      const int n = next(s, a);
      t.state = {s == 0 ? 1.0 : 0.0, s == 1 ? 1.0 : 0.0};
      t.next_state = {n == 0 ? 1.0 : 0.0, n == 1 ? 1.0 : 0.0};
      t.action = a;
      t.r_cov = rc[s][a];
      t.r_comm = rm[s][a];
      t.next_mask = {true, true, false, false};
      all.push_back(t);
    }
  std::vector<const agent::Transition*> batch;
  for (const auto& t : all) batch.push_back(&t);
  auto error = [&] {
    double e = 0.0;
    for (int s = 0; s < 2; ++s) {
      const auto v = q.q_values(all[static_cast<std::size_t>(2 * s)].state);
      for (int a = 0; a < 2; ++a) {
        e = std::max(e, std::abs(v.cov[static_cast<std::size_t>(a)] - qc[s][a]));
        e = std::max(e, std::abs(v.comm[static_cast<std::size_t>(a)] - qm[s][a]));
      }
    }
    return e;
  };
  int reached = -1;
  for (int i = 1; i <= kBellmanUpdates; ++i) {
    q.td_update(batch);
    if (reached < 0 && error() <= kBellmanTol) reached = i;
  }
  const double final_err = error();
  return {final_err <= kBellmanTol,
          fmt("sup-norm error %.2e after %d updates (tol %g), first within tol at update %d, "
              "Q*cov(s1,stay)=%.3f",
              final_err, kBellmanUpdates, kBellmanTol, reached, qc[1][0])};
}

// ---------------------------------------------------------------- 5

// Shortest slot count to capture every cell. Each slot is a legal move then a
// capture; the start cell is not captured before the first move.
int bfs_tour_length(int rows, int cols) {
  const int cells = rows * cols;
  const int full = (1 << cells) - 1;
  std::vector<int> dist(static_cast<std::size_t>(cells) << cells, -1);
  auto key = [&](int cell, int mask) { return (static_cast<std::size_t>(mask) * cells) + cell; };
  std::queue<std::pair<int, int>> open;
  dist[key(0, 0)] = 0;
  open.push({0, 0});
  const int dr[4] = {-1, 1, 0, 0}, dc[4] = {0, 0, 1, -1};
  while (!open.empty()) {
    const auto [cell, mask] = open.front();
    open.pop();
    const int d = dist[key(cell, mask)];
    if (mask == full) return d;
    for (int a = 0; a < 4; ++a) {
      const int r = cell / cols + dr[a], c = cell % cols + dc[a];
      if (r < 0 || r >= rows || c < 0 || c >= cols) continue;
      const int n = r * cols + c;
      const int m = mask | (1 << n);
      if (dist[key(n, m)] < 0) {
        dist[key(n, m)] = d + 1;
        open.push({n, m});
      }
    }
  }
  return -1;
}

Outcome toy() {
  const Config cfg = cli::parse_config(kToyIni);
  const int optimum = bfs_tour_length(cfg.scenario.grid_h, cfg.scenario.grid_w);
  std::vector<int> slots;
  int good = 0;
  for (auto seed : cfg.experiment.seeds) {
    const auto run = audited_run(cfg, cfg.experiment.variant, seed);
    if (!run || run->eval.empty()) {
      slots.push_back(-1);
      continue;
    }
    const auto& last = run->eval.back();
    slots.push_back(last.slots);
    if (last.coverage == 1.0 && last.slots <= optimum + kToySlack) ++good;
  }
  return {good >= kToyRequired && static_cast<int>(slots.size()) == kToySeeds,
          fmt("BFS optimum %d slots; greedy T per seed %s; %d/%d within +%d (need %d)", optimum,
              list(slots).c_str(), good, kToySeeds, kToySlack, kToyRequired)};
}

// ---------------------------------------------------------------- 6-9

struct Scaled {
  Config cfg;
  std::map<Variant, std::vector<RunLog>> runs;
  bool complete = true;
};

std::optional<Scaled> g_scaled;

const Scaled& scaled() {
  if (g_scaled) return *g_scaled;
  Scaled s;
  s.cfg = cli::parse_config(kScaledIni);
  for (Variant v : {Variant::HDWDRL, Variant::NoEAC, Variant::NoSWS, Variant::StaticWeight}) {
    for (auto seed : s.cfg.experiment.seeds) {
      auto run = audited_run(s.cfg, v, seed);
      if (run) {
        s.runs[v].push_back(std::move(*run));
      } else {
        s.complete = false;
      }
    }
  }
  g_scaled = std::move(s);
  return *g_scaled;
}

harness::SummaryOptions summary_options(const Config& cfg) {
  harness::SummaryOptions o;
  o.rho_cov = cfg.scenario.rho_cov;
  o.rho_comm = cfg.scenario.rho_comm;
  o.censor = cfg.experiment.episodes;
  o.final_window = kFinalWindow;
  return o;
}

harness::Summary scaled_summary() {
  const auto& s = scaled();
  std::vector<RunLog> all;
  for (const auto& [v, runs] : s.runs) all.insert(all.end(), runs.begin(), runs.end());
  return harness::aggregate(all, summary_options(s.cfg));
}

Outcome scaled_claim() {
  const auto& s = scaled();
  const auto sum = scaled_summary();
  const auto* h = sum.find(Variant::HDWDRL);
  const auto* st = sum.find(Variant::StaticWeight);
  if (!s.complete || !h || !st || h->seeds.size() != 5 || st->seeds.size() != 5)
    return {false, "scaled runs incomplete"};
  const bool faster = h->median_first_eval < st->median_first_eval;
  const bool shorter = h->median_final_slots <= st->median_final_slots;
  return {faster && shorter,
          fmt("first threshold checkpoint median HDWDRL %.1f %s vs StaticWeight %.1f %s (need <); "
              "final T median HDWDRL %.1f %s vs StaticWeight %.1f %s (need <=)",
              h->median_first_eval, list(h->first_eval).c_str(), st->median_first_eval,
              list(st->first_eval).c_str(), h->median_final_slots, list(h->final_slots).c_str(),
              st->median_final_slots, list(st->final_slots).c_str())};
}

Outcome ablations() {
  const auto& s = scaled();
  const auto sum = scaled_summary();
  const auto* h = sum.find(Variant::HDWDRL);
  const auto* ne = sum.find(Variant::NoEAC);
  const auto* ns = sum.find(Variant::NoSWS);
  if (!s.complete || !h || !ne || !ns) return {false, "scaled runs incomplete"};

  bool alpha_const = true;
  for (const auto& run : s.runs.at(Variant::NoEAC)) {
    for (const auto& e : run.train) alpha_const = alpha_const && e.alpha == run.train.front().alpha;
    for (const auto& e : run.eval) alpha_const = alpha_const && e.alpha == run.train.front().alpha;
  }
  bool delta_zero = true;
  for (const auto& run : s.runs.at(Variant::NoSWS)) {
    for (const auto& e : run.train) delta_zero = delta_zero && e.mean_delta == 0.0;
    for (const auto& e : run.eval) delta_zero = delta_zero && e.mean_delta == 0.0;
  }
  auto not_faster = [&](const harness::VariantSummary& a) {
    int n = 0;
    for (std::size_t i = 0; i < a.first_eval.size() && i < h->first_eval.size(); ++i)
      if (a.seeds[i] == h->seeds[i] && a.first_eval[i] >= h->first_eval[i]) ++n;
    return n;
  };
  const int ne_n = not_faster(*ne);
  const int ns_n = not_faster(*ns);
  const bool pass = alpha_const && delta_zero && ne_n >= kAblationRequired && ns_n >= kAblationRequired;
  return {pass, fmt("NoEAC alpha constant: %s; NoSWS delta all 0: %s; seeds with ablation first "
                    "threshold >= HDWDRL: NoEAC %d/5 %s, NoSWS %d/5 %s vs HDWDRL %s (need >= %d each)",
                    alpha_const ? "yes" : "no", delta_zero ? "yes" : "no", ne_n,
                    list(ne->first_eval).c_str(), ns_n, list(ns->first_eval).c_str(),
                    list(h->first_eval).c_str(), kAblationRequired)};
}

Outcome constraints() {
  // Energy arithmetic with the full-scale power and budget.
  const env::ScenarioConfig full;
  env::WorldState w = env::init_world(full);
  int slots = 0;
  while (w.uavs[0].alive && slots < 1000) {
    env::consume_energy(w, full);
    ++slots;
  }
  bool within_budget = w.uavs[0].energy_used <= full.energy_budget;
  int longest = 0;
  if (g_scaled)
    for (const auto& [v, runs] : g_scaled->runs)
      for (const auto& r : runs)
        for (const auto& e : r.train) longest = std::max(longest, e.slots);
  const bool pass = g_violations == 0 && slots == 100 && within_budget && longest <= 100;
  std::string detail = fmt("%d audited runs, %d violations; energy cap %d slots (%.2f J of %.0f J); "
                           "longest scaled episode %d slots",
                           g_audited_runs, g_violations, slots, w.uavs[0].energy_used,
                           full.energy_budget, longest);
  for (const auto& n : g_violation_notes) detail += "; " + n;
  return {pass, detail};
}

std::string metrics_bytes(const std::vector<RunLog>& runs, const std::filesystem::path& path) {
  {
    std::ofstream os(path, std::ios::binary);
    harness::write_metrics(os, runs);
  }
  std::ifstream is(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
  const auto& s = scaled();
  std::vector<RunLog> first, second;
  for (Variant v : {Variant::HDWDRL, Variant::StaticWeight}) {
    for (const auto& r : s.runs.at(v)) first.push_back(r);
    for (auto seed : s.cfg.experiment.seeds)
      if (auto r = audited_run(s.cfg, v, seed)) second.push_back(std::move(*r));
  }
  const auto dir = std::filesystem::current_path() / "acceptance_out";
  std::filesystem::create_directories(dir);
  const auto a = metrics_bytes(first, dir / "metrics_a.csv");
  const auto b = metrics_bytes(second, dir / "metrics_b.csv");
  const bool pass = !a.empty() && a == b;
  return {pass, fmt("HDWDRL + StaticWeight, 5 seeds, rerun: %zu vs %zu bytes, %s", a.size(), b.size(),
                    a == b ? "identical" : "differ")};
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  // Criterion 8 runs last so it sees every audited run.
  const std::vector<Criterion> all = {
      {1, "physics oracles", physics},
      {2, "gradient integrity", gradients},
      {3, "weighting algebra", weighting_algebra},
      {4, "Bellman fixed point", bellman},
      {5, "toy optimality", toy},
      {6, "scaled ordering", scaled_claim},
      {7, "ablation sanity", ablations},
      {9, "determinism", determinism},
      {8, "constraint compliance", constraints},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::cout << "criterion " << c.id << " " << c.name << ": " << (o.pass ? "PASS" : "FAIL") << " ("
              << o.detail << ") [" << fmt("%.1f s", secs) << "]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
