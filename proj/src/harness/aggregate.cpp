#include "hdw/harness/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "hdw/common/errors.hpp"

namespace hdw::harness {

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw UsageError("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

std::vector<EvalBlock> eval_blocks(const RunLog& run) {
  std::vector<EvalBlock> out;
  std::size_t i = 0;
  while (i < run.eval.size()) {
    const int k = run.eval[i].k;
    std::vector<double> c, r, t;
    for (; i < run.eval.size() && run.eval[i].k == k; ++i) {
      c.push_back(run.eval[i].coverage);
      r.push_back(run.eval[i].comm);
      t.push_back(run.eval[i].slots);
    }
    out.push_back({k, median(c), median(r), median(t)});
  }
  return out;
}

int first_threshold_train(const RunLog& run, double rho_cov, double rho_comm, int censor) {
  for (const auto& s : run.train)
    if (s.coverage >= rho_cov && s.comm >= rho_comm) return s.k;
  return censor;
}

int first_threshold_eval(const RunLog& run, double rho_cov, double rho_comm, int censor) {
  for (const auto& b : eval_blocks(run))
    if (b.coverage >= rho_cov && b.comm >= rho_comm) return b.k;
  return censor;
}

double final_completion_time(const RunLog& run, int window) {
  auto blocks = eval_blocks(run);
  if (blocks.empty()) return 0.0;
  const auto n = std::min<std::size_t>(blocks.size(), static_cast<std::size_t>(std::max(window, 1)));
  std::vector<double> t;
  for (auto it = blocks.end() - static_cast<long>(n); it != blocks.end(); ++it) t.push_back(it->slots);
  return median(std::move(t));
}

const VariantSummary* Summary::find(Variant v) const {
  for (const auto& s : variants)
    if (s.variant == v) return &s;
  return nullptr;
}

namespace {

std::vector<SeriesPoint> make_series(const std::vector<const RunLog*>& runs, bool eval, int field) {
  std::map<int, std::vector<double>> by_k;
  for (const auto* r : runs) {
    if (eval) {
      for (const auto& b : eval_blocks(*r))
        by_k[b.k].push_back(field == 0 ? b.coverage : field == 1 ? b.comm : b.slots);
    } else {
      for (const auto& s : r->train)
        by_k[s.k].push_back(field == 0 ? s.coverage : field == 1 ? s.comm : s.slots);
    }
  }
  std::vector<SeriesPoint> out;
  for (const auto& [k, v] : by_k) out.push_back({k, median(v), quantile(v, 0.25), quantile(v, 0.75)});
  return out;
}

}  // namespace

Summary aggregate(std::span<const RunLog> runs, const SummaryOptions& opts) {
  if (runs.empty()) throw UsageError("aggregate needs at least one run");
  std::map<int, std::vector<const RunLog*>> by_variant;
  for (const auto& r : runs) by_variant[static_cast<int>(r.variant)].push_back(&r);

  Summary out;
  for (auto& [v, list] : by_variant) {
    std::sort(list.begin(), list.end(), [](const RunLog* a, const RunLog* b) { return a->seed < b->seed; });
    VariantSummary vs;
    vs.variant = static_cast<Variant>(v);
    std::vector<double> ft, fe, fs;
    for (const auto* r : list) {
      vs.seeds.push_back(r->seed);
      const int censor = opts.censor > 0 ? opts.censor : static_cast<int>(r->train.size());
      vs.first_train.push_back(first_threshold_train(*r, opts.rho_cov, opts.rho_comm, censor));
      vs.first_eval.push_back(first_threshold_eval(*r, opts.rho_cov, opts.rho_comm, censor));
      vs.final_slots.push_back(final_completion_time(*r, opts.final_window));
      ft.push_back(vs.first_train.back());
      fe.push_back(vs.first_eval.back());
      fs.push_back(vs.final_slots.back());
    }
    vs.median_first_train = median(ft);
    vs.median_first_eval = median(fe);
    vs.median_final_slots = median(fs);
    vs.train_coverage = make_series(list, false, 0);
    vs.train_comm = make_series(list, false, 1);
    vs.train_slots = make_series(list, false, 2);
    vs.eval_coverage = make_series(list, true, 0);
    vs.eval_comm = make_series(list, true, 1);
    vs.eval_slots = make_series(list, true, 2);
    out.variants.push_back(std::move(vs));
  }
  return out;
}

}  // namespace hdw::harness
