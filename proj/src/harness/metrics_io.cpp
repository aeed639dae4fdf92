#include "hdw/harness/metrics_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hdw/common/errors.hpp"

namespace hdw::harness {

const std::vector<std::string> kMetricsColumns = {
    "seed",       "variant",    "phase",      "k",         "C",         "R",
    "T",          "success",    "mean_alpha", "mean_delta", "mean_w_cov", "loss_cov",
    "loss_comm",  "loss_step",  "loss_critic", "loss_actor"};

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

template <class T>
T parse_field(const std::string& text, int line, const std::string& column) {
  T v{};
  const char* end = text.data() + text.size();
  auto [p, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || p != end || text.empty())
    throw FormatError("metrics.csv line " + std::to_string(line) + ": bad value '" + text +
                      "' in column " + column);
  return v;
}

double parse_double(const std::string& text, int line, const std::string& column) {
  // from_chars for double is missing on some standard libraries; strtod is fine here.
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size())
    throw FormatError("metrics.csv line " + std::to_string(line) + ": bad value '" + text +
                      "' in column " + column);
  return v;
}

}  // namespace

std::string format_metrics_row(const RunLog& run, const EpisodeStats& s, bool eval) {
  std::string row;
  row += std::to_string(run.seed) + ',';
  row += std::string(to_string(run.variant)) + ',';
  row += eval ? "eval," : "train,";
  row += std::to_string(s.k) + ',';
  row += num(s.coverage) + ',' + num(s.comm) + ',' + std::to_string(s.slots) + ',';
  row += s.success ? "1," : "0,";
  row += num(s.alpha) + ',' + num(s.mean_delta) + ',' + num(s.mean_w_cov) + ',';
  row += num(s.loss_cov) + ',' + num(s.loss_comm) + ',' + num(s.loss_step) + ',';
  row += num(s.loss_critic) + ',' + num(s.loss_actor);
  return row;
}

void write_metrics_header(std::ostream& os) {
  os << kMetricsMagic << '\n';
  for (std::size_t i = 0; i < kMetricsColumns.size(); ++i)
    os << (i ? "," : "") << kMetricsColumns[i];
  os << '\n';
}

void write_metrics(std::ostream& os, std::span<const RunLog> runs) {
  write_metrics_header(os);
  // Production order: each training episode followed by the evaluations it triggered.
  for (const auto& r : runs) {
    std::size_t e = 0;
    for (const auto& s : r.train) {
      os << format_metrics_row(r, s, false) << '\n';
      for (; e < r.eval.size() && r.eval[e].k <= s.k; ++e) os << format_metrics_row(r, r.eval[e], true) << '\n';
    }
    for (; e < r.eval.size(); ++e) os << format_metrics_row(r, r.eval[e], true) << '\n';
  }
}

std::vector<RunLog> read_metrics(std::istream& is) {
  std::string line;
  int lineno = 1;
  if (!std::getline(is, line) || line.rfind(kMetricsMagic, 0) != 0)
    throw FormatError("metrics.csv line 1: expected '" + std::string(kMetricsMagic) + "'");
  ++lineno;
  if (!std::getline(is, line) || split(line) != kMetricsColumns)
    throw FormatError("metrics.csv line 2: unexpected header");

  std::vector<RunLog> runs;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto f = split(line);
    if (f.size() != kMetricsColumns.size())
      throw FormatError("metrics.csv line " + std::to_string(lineno) + ": expected " +
                        std::to_string(kMetricsColumns.size()) + " fields, got " +
                        std::to_string(f.size()));
    const auto seed = parse_field<std::uint64_t>(f[0], lineno, "seed");
    Variant variant;
    try {
      variant = parse_variant(f[1]);
    } catch (const std::exception&) {
      throw FormatError("metrics.csv line " + std::to_string(lineno) + ": unknown variant '" +
                        f[1] + "'");
    }
    if (f[2] != "train" && f[2] != "eval")
      throw FormatError("metrics.csv line " + std::to_string(lineno) + ": bad phase '" + f[2] + "'");

    EpisodeStats s;
    s.k = parse_field<int>(f[3], lineno, "k");
    s.coverage = parse_double(f[4], lineno, "C");
    s.comm = parse_double(f[5], lineno, "R");
    s.slots = parse_field<int>(f[6], lineno, "T");
    s.success = parse_field<int>(f[7], lineno, "success") != 0;
    s.alpha = parse_double(f[8], lineno, "mean_alpha");
    s.mean_delta = parse_double(f[9], lineno, "mean_delta");
    s.mean_w_cov = parse_double(f[10], lineno, "mean_w_cov");
    s.loss_cov = parse_double(f[11], lineno, "loss_cov");
    s.loss_comm = parse_double(f[12], lineno, "loss_comm");
    s.loss_step = parse_double(f[13], lineno, "loss_step");
    s.loss_critic = parse_double(f[14], lineno, "loss_critic");
    s.loss_actor = parse_double(f[15], lineno, "loss_actor");

    RunLog* run = nullptr;
    for (auto& r : runs)
      if (r.seed == seed && r.variant == variant) run = &r;
    if (!run) {
      runs.push_back({});
      run = &runs.back();
      run->seed = seed;
      run->variant = variant;
    }
    (f[2] == "eval" ? run->eval : run->train).push_back(s);
  }
  return runs;
}

std::vector<RunLog> read_metrics(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return read_metrics(in);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string summary_json(const Summary& summary, const SummaryOptions& opts) {
  using nlohmann::ordered_json;
  auto series = [](const std::vector<SeriesPoint>& pts) {
    ordered_json a = ordered_json::array();
    for (const auto& p : pts) a.push_back({p.k, p.median, p.q25, p.q75});
    return a;
  };
  ordered_json j;
  j["format"] = "hdwdrl-summary";
  j["version"] = 1;
  j["thresholds"] = {{"coverage", opts.rho_cov}, {"comm", opts.rho_comm}};
  j["final_window"] = opts.final_window;
  j["series_columns"] = {"k", "median", "q25", "q75"};
  ordered_json vars = ordered_json::array();
  for (const auto& v : summary.variants) {
    ordered_json o;
    o["variant"] = std::string(to_string(v.variant));
    o["seeds"] = v.seeds;
    o["first_threshold_train"] = v.first_train;
    o["first_threshold_eval"] = v.first_eval;
    o["final_completion_time"] = v.final_slots;
    o["median_first_threshold_train"] = v.median_first_train;
    o["median_first_threshold_eval"] = v.median_first_eval;
    o["median_final_completion_time"] = v.median_final_slots;
    o["train"] = {{"C", series(v.train_coverage)}, {"R", series(v.train_comm)}, {"T", series(v.train_slots)}};
    o["eval"] = {{"C", series(v.eval_coverage)}, {"R", series(v.eval_comm)}, {"T", series(v.eval_slots)}};
    vars.push_back(std::move(o));
  }
  j["variants"] = std::move(vars);
  return j.dump(2) + "\n";
}

}  // namespace hdw::harness
