// hdwdrl: train, evaluate and inspect the hierarchical dynamic-weighting
// multi-UAV agents. Exit codes: 0 ok, 1 usage, 2 config or input file,
// 3 invariant violation or failed gradient check.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hdw/cli/config_io.hpp"
#include "hdw/cli/network_checks.hpp"
#include "hdw/cli/plots.hpp"
#include "hdw/cli/validate_env.hpp"
#include "hdw/common/errors.hpp"
#include "hdw/harness/metrics_io.hpp"
#include "hdw/harness/trainer.hpp"

namespace fs = std::filesystem;
using namespace hdw;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;

struct Common {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string seeds;
  std::string out;
};

fs::path output_dir(const Common& c) {
  if (!c.out.empty()) return c.out;
  if (const char* root = std::getenv("HDWDRL_OUT_ROOT"); root && *root) return root;
  return "runs";
}

harness::Config resolve(const Common& c) {
  auto overrides = c.overrides;
  if (!c.seeds.empty()) overrides.push_back("experiment.seeds=" + c.seeds);
  return cli::load_config(c.config_path, overrides);
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("-c,--config", c.config_path, "INI config file (defaults apply to missing keys)")
      ->check(CLI::ExistingFile);
  sub->add_option("-s,--set", c.overrides, "Override, e.g. -s scenario.grid_h=6 (repeatable)");
  sub->add_option("--seeds", c.seeds, "Comma-separated seed list (experiment.seeds)");
  sub->add_option("-o,--out", c.out, "Output directory (default $HDWDRL_OUT_ROOT or ./runs)");
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

harness::SummaryOptions summary_options(const harness::Config& cfg) {
  harness::SummaryOptions o;
  o.rho_cov = cfg.scenario.rho_cov;
  o.rho_comm = cfg.scenario.rho_comm;
  return o;
}

int run_experiments(const harness::Config& base, const std::vector<harness::Variant>& variants,
                    const fs::path& dir) {
  fs::create_directories(dir);
  write_file(dir / "config.ini", cli::to_ini(base));
  const std::string hash = cli::config_hash(base);

  std::ofstream metrics(dir / "metrics.csv", std::ios::binary);
  if (!metrics) throw std::runtime_error("cannot write " + (dir / "metrics.csv").string());
  harness::write_metrics_header(metrics);
  std::optional<std::ofstream> trace;
  if (base.experiment.write_trace) trace.emplace(dir / "trace.jsonl", std::ios::binary);

  harness::RunHooks hooks;
  hooks.trace = trace ? &*trace : nullptr;
  hooks.on_episode = [&](const harness::RunLog& run, const harness::EpisodeStats& s, bool eval) {
    metrics << harness::format_metrics_row(run, s, eval) << '\n';
    metrics.flush();
    std::cout << harness::to_string(run.variant) << " seed " << run.seed << (eval ? " eval " : " train ")
              << "k " << s.k << "  C " << s.coverage << "  R " << s.comm << "  T " << s.slots
              << "  alpha " << s.alpha << std::endl;
  };

  std::vector<harness::RunLog> logs;
  for (auto v : variants) {
    harness::Config cfg = base;
    cfg.experiment.variant = v;
    for (auto seed : cfg.experiment.seeds) {
      auto learners = harness::Learners::create(cfg, seed);
      logs.push_back(harness::train_run(cfg, v, seed, learners, hooks));
      if (cfg.experiment.save_checkpoints) {
        const auto ck = dir / "checkpoints" / (std::string(harness::to_string(v)) + "_seed" + std::to_string(seed));
        fs::create_directories(ck);
        harness::save_learners(ck, learners, hash);
      }
    }
  }
  const auto opts = summary_options(base);
  const auto summary = harness::aggregate(logs, opts);
  write_file(dir / "summary.json", harness::summary_json(summary, opts));
  for (const auto& v : summary.variants)
    std::cout << harness::to_string(v.variant) << ": median first-threshold episode (eval) "
              << v.median_first_eval << ", median final T " << v.median_final_slots << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical dynamic-weighting DRL for multi-UAV sensing and communication"};
  app.require_subcommand(1);
  Common common;

  auto* train = app.add_subcommand("train", "Train one variant over the configured seeds");
  add_common(train, common);
  std::string variant_name;
  train->add_option("--variant", variant_name, "HDWDRL, NoEAC, NoSWS or StaticWeight");

  auto* sweep = app.add_subcommand("sweep", "Train several variants over the same seeds");
  add_common(sweep, common);
  std::vector<std::string> sweep_variants{"HDWDRL", "NoEAC", "NoSWS", "StaticWeight"};
  sweep->add_option("--variants", sweep_variants, "Variants to run")->delimiter(',');

  auto* eval = app.add_subcommand("eval", "Greedy evaluation of a saved checkpoint");
  add_common(eval, common);
  std::string checkpoint;
  int eval_count = 0;
  eval->add_option("--checkpoint", checkpoint, "Checkpoint directory written by train")
      ->required()
      ->check(CLI::ExistingDirectory);
  eval->add_option("--variant", variant_name, "Variant the checkpoint was trained as");
  eval->add_option("-n,--episodes", eval_count, "Evaluation episodes (default experiment.eval_episodes)");

  auto* grads = app.add_subcommand("check-gradients", "Finite-difference check of every network");
  add_common(grads, common);
  int grad_inputs = 20;
  std::size_t grad_coords = 256;
  grads->add_option("--inputs", grad_inputs, "Random inputs per network");
  grads->add_option("--coordinates", grad_coords, "Coordinates per input (0 = all)");

  auto* venv = app.add_subcommand("validate-env", "Random-policy rollout with constraint audits");
  add_common(venv, common);
  int venv_slots = 100;
  std::uint64_t venv_seed = 1;
  venv->add_option("--slots", venv_slots, "Maximum slots");
  venv->add_option("--seed", venv_seed, "World seed");

  auto* plots = app.add_subcommand("export-plots", "Per-variant median/IQR series from metrics.csv");
  add_common(plots, common);
  std::string metrics_path;
  plots->add_option("--metrics", metrics_path, "metrics.csv to read")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (train->parsed()) {
      if (!variant_name.empty()) common.overrides.push_back("experiment.variant=" + variant_name);
      const auto cfg = resolve(common);
      return run_experiments(cfg, {cfg.experiment.variant}, output_dir(common));
    }
    if (sweep->parsed()) {
      const auto cfg = resolve(common);
      std::vector<harness::Variant> vs;
      for (const auto& n : sweep_variants) {
        try {
          vs.push_back(harness::parse_variant(n));
        } catch (const std::exception&) {
          throw ConfigError("--variants: unknown variant '" + n + "'");
        }
      }
      return run_experiments(cfg, vs, output_dir(common));
    }
    if (eval->parsed()) {
      if (!variant_name.empty()) common.overrides.push_back("experiment.variant=" + variant_name);
      const auto cfg = resolve(common);
      auto learners = harness::Learners::create(cfg, cfg.experiment.seeds.front());
      harness::load_learners(checkpoint, learners);
      const int n = eval_count > 0 ? eval_count : cfg.experiment.eval_episodes;
      const auto stats = harness::evaluate(cfg, cfg.experiment.variant, learners,
                                           cfg.experiment.seeds.front(), n, 0);
      harness::RunLog log;
      log.seed = cfg.experiment.seeds.front();
      log.variant = cfg.experiment.variant;
      log.eval = stats;
      const fs::path dir = output_dir(common);
      fs::create_directories(dir);
      std::ofstream os(dir / "eval_metrics.csv", std::ios::binary);
      harness::write_metrics(os, std::span<const harness::RunLog>(&log, 1));
      for (const auto& s : stats)
        std::cout << "C " << s.coverage << "  R " << s.comm << "  T " << s.slots
                  << (s.success ? "  success" : "") << '\n';
      return kExitOk;
    }
    if (grads->parsed()) {
      const auto cfg = resolve(common);
      nn::GradCheckOptions opts;
      opts.max_coordinates = grad_coords;
      const auto checks = cli::check_all_networks(cfg, cfg.experiment.seeds.front(), grad_inputs, opts);
      bool ok = true;
      for (const auto& c : checks) {
        std::cout << (c.passed ? "ok   " : "FAIL ") << c.name << "  inputs " << c.inputs
                  << "  worst rel err " << c.worst_error << "  coords " << c.coordinates
                  << "  kinks skipped " << c.kinks_skipped << '\n';
        ok = ok && c.passed;
      }
      return ok ? kExitOk : kExitInvariant;
    }
    if (venv->parsed()) {
      const auto cfg = resolve(common);
      cli::print_report(std::cout, cli::validate_env(cfg.scenario, venv_seed, venv_slots));
      return kExitOk;
    }
    if (plots->parsed()) {
      const auto cfg = resolve(common);
      for (const auto& p : cli::export_plots(metrics_path, output_dir(common), summary_options(cfg)))
        std::cout << p.string() << '\n';
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const FormatError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
