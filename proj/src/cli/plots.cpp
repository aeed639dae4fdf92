#include "hdw/cli/plots.hpp"

#include <cstdio>
#include <fstream>

#include "hdw/common/errors.hpp"
#include "hdw/harness/metrics_io.hpp"

namespace hdw::cli {

namespace {

void write_series(std::ofstream& os, const char* phase, const char* metric,
                  const std::vector<harness::SeriesPoint>& pts) {
  char buf[160];
  for (const auto& p : pts) {
    std::snprintf(buf, sizeof buf, "%s,%s,%d,%.9g,%.9g,%.9g\n", phase, metric, p.k, p.median, p.q25, p.q75);
    os << buf;
  }
}

}  // namespace

std::vector<std::filesystem::path> export_plots(const harness::Summary& summary,
                                                const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> out;
  for (const auto& v : summary.variants) {
    const auto path = out_dir / ("series_" + std::string(harness::to_string(v.variant)) + ".csv");
    std::ofstream os(path);
    if (!os) throw FormatError("cannot write " + path.string());
    os << "phase,metric,episode,median,q25,q75\n";
    write_series(os, "train", "C", v.train_coverage);
    write_series(os, "train", "R", v.train_comm);
    write_series(os, "train", "T", v.train_slots);
    write_series(os, "eval", "C", v.eval_coverage);
    write_series(os, "eval", "R", v.eval_comm);
    write_series(os, "eval", "T", v.eval_slots);
    out.push_back(path);
  }
  return out;
}

std::vector<std::filesystem::path> export_plots(const std::filesystem::path& metrics_csv,
                                                const std::filesystem::path& out_dir,
                                                const harness::SummaryOptions& opts) {
  const auto runs = harness::read_metrics(metrics_csv);
  if (runs.empty()) throw FormatError(metrics_csv.string() + ": no episode rows");
  return export_plots(harness::aggregate(runs, opts), out_dir);
}

}  // namespace hdw::cli
