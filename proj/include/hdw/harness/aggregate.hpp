#pragma once

#include <span>
#include <vector>

#include "hdw/harness/trainer.hpp"

namespace hdw::harness {

/// Linear-interpolation quantile (q in [0, 1]); throws UsageError on empty input.
double quantile(std::vector<double> values, double q);
double median(std::vector<double> values);

struct SeriesPoint {
  int k = 0;
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  bool operator==(const SeriesPoint&) const = default;
};

/// One evaluation checkpoint of a run: medians over its greedy episodes, so a
/// checkpoint reaches the thresholds when most of its episodes do.
struct EvalBlock {
  int k = 0;
  double coverage = 0.0;
  double comm = 0.0;
  double slots = 0.0;
};
std::vector<EvalBlock> eval_blocks(const RunLog& run);

/// First episode index whose coverage and communication completion both reach
/// the thresholds, or `censor` if none does. Training episodes use the
/// episode's own ratios; evaluation uses the block medians.
int first_threshold_train(const RunLog& run, double rho_cov, double rho_comm, int censor);
int first_threshold_eval(const RunLog& run, double rho_cov, double rho_comm, int censor);

/// Median of the slot counts of the last `window` evaluation blocks.
double final_completion_time(const RunLog& run, int window);

struct SummaryOptions {
  double rho_cov = 0.8;
  double rho_comm = 0.98;
  int censor = 0;       // reported when a run never reaches the thresholds
  int final_window = 10;
};

struct VariantSummary {
  Variant variant = Variant::HDWDRL;
  std::vector<std::uint64_t> seeds;  // ascending
  std::vector<SeriesPoint> train_coverage, train_comm, train_slots;
  std::vector<SeriesPoint> eval_coverage, eval_comm, eval_slots;
  std::vector<int> first_train;   // per seed, same order as seeds
  std::vector<int> first_eval;
  std::vector<double> final_slots;
  double median_first_train = 0.0;
  double median_first_eval = 0.0;
  double median_final_slots = 0.0;
};

struct Summary {
  std::vector<VariantSummary> variants;  // in enum order
  [[nodiscard]] const VariantSummary* find(Variant v) const;
};

/// Cross-seed statistics per variant. Independent of the order of `runs`.
Summary aggregate(std::span<const RunLog> runs, const SummaryOptions& opts);

}  // namespace hdw::harness
