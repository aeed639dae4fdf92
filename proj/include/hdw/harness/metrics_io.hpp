#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hdw/harness/aggregate.hpp"

namespace hdw::harness {

// metrics.csv, version 1:
//   line 1: "# hdwdrl-metrics v1"
//   line 2: header (kMetricsColumns joined by ',')
//   then one row per episode in production order: runs one after another,
//   each training episode followed by the evaluation episodes it triggered.
inline constexpr int kMetricsVersion = 1;
inline constexpr const char* kMetricsMagic = "# hdwdrl-metrics v1";
extern const std::vector<std::string> kMetricsColumns;

/// One CSV row. phase is "train" or "eval".
std::string format_metrics_row(const RunLog& run, const EpisodeStats& s, bool eval);
void write_metrics_header(std::ostream& os);
void write_metrics(std::ostream& os, std::span<const RunLog> runs);

/// Parses metrics.csv back into run logs (grouped by seed and variant, in
/// first-appearance order). Throws FormatError naming the 1-based line.
std::vector<RunLog> read_metrics(std::istream& is);
std::vector<RunLog> read_metrics(const std::filesystem::path& path);

/// summary.json (format "hdwdrl-summary", version 1).
std::string summary_json(const Summary& summary, const SummaryOptions& opts);

}  // namespace hdw::harness
