#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hdw/harness/aggregate.hpp"

namespace hdw::cli {

/// Writes series_<variant>.csv per variant with columns
/// phase,metric,episode,median,q25,q75 for C, R and T. Returns the paths.
std::vector<std::filesystem::path> export_plots(const harness::Summary& summary,
                                                const std::filesystem::path& out_dir);

/// Same, reading metrics.csv first. Malformed input raises FormatError.
std::vector<std::filesystem::path> export_plots(const std::filesystem::path& metrics_csv,
                                                const std::filesystem::path& out_dir,
                                                const harness::SummaryOptions& opts);

}  // namespace hdw::cli
