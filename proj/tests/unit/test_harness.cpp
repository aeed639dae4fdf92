#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "hdw/common/errors.hpp"
#include "hdw/harness/aggregate.hpp"
#include "hdw/harness/metrics_io.hpp"
#include "hdw/harness/trainer.hpp"

using namespace hdw;
using namespace hdw::harness;

namespace {

Config small_config(Variant v, int episodes) {
  Config c;
  c.scenario.grid_h = 4;
  c.scenario.grid_w = 4;
  c.scenario.uav_count = 2;
  c.scenario.user_count = 4;
  c.scenario.init_demand = 5e6;
  c.dqn.warmup = 16;
  c.dqn.batch_size = 16;
  c.experiment.variant = v;
  c.experiment.episodes = episodes;
  c.experiment.eval_interval = 2;
  c.experiment.eval_episodes = 2;
  return c;
}

EpisodeStats stats(int k, double c, double r, int t) {
  EpisodeStats s;
  s.k = k;
  s.coverage = c;
  s.comm = r;
  s.slots = t;
  return s;
}

}  // namespace

TEST_CASE("greedy evaluation leaves every network untouched") {
  const auto cfg = small_config(Variant::HDWDRL, 2);
  auto learners = Learners::create(cfg, 3);
  train_run(cfg, Variant::HDWDRL, 3, learners);
  const auto before = learners.q.front().backbone();
  const auto actor = learners.ac.actor();
  const auto critic = learners.ac.critic();
  const auto step = learners.step.net();
  const auto ws = learners.weights;
  const auto env_steps = learners.env_steps;
  const auto replay = learners.replay.front().size();
  evaluate(cfg, Variant::HDWDRL, learners, 3, 3, 0);
  CHECK(learners.q.front().backbone() == before);
  CHECK(learners.ac.actor() == actor);
  CHECK(learners.ac.critic() == critic);
  CHECK(learners.step.net() == step);
  CHECK(learners.weights.prev_alpha == ws.prev_alpha);
  CHECK(learners.weights.episode == ws.episode);
  CHECK(learners.env_steps == env_steps);
  CHECK(learners.replay.front().size() == replay);
}

TEST_CASE("training runs are deterministic and bounded") {
  const auto cfg = small_config(Variant::HDWDRL, 4);
  const auto a = train_run(cfg, Variant::HDWDRL, 7);
  const auto b = train_run(cfg, Variant::HDWDRL, 7);
  std::ostringstream sa, sb;
  write_metrics(sa, std::span<const RunLog>(&a, 1));
  write_metrics(sb, std::span<const RunLog>(&b, 1));
  CHECK(sa.str() == sb.str());
  REQUIRE(a.train.size() == 4);
  CHECK(a.eval.size() == 4);  // two checkpoints, two episodes each
  for (const auto& s : a.train) {
    CHECK(s.slots >= 1);
    CHECK(s.slots <= 100);
    CHECK(s.coverage >= 0.0);
    CHECK(s.coverage <= 1.0);
    CHECK(s.comm >= 0.0);
    CHECK(s.comm <= 1.0);
  }
  const auto c = train_run(cfg, Variant::HDWDRL, 8);
  std::ostringstream sc;
  write_metrics(sc, std::span<const RunLog>(&c, 1));
  CHECK(sc.str() != sa.str());
}

TEST_CASE("trained parameters do not depend on heap layout") {
  const auto cfg = small_config(Variant::HDWDRL, 6);
  auto a = Learners::create(cfg, 11);
  train_run(cfg, Variant::HDWDRL, 11, a);
  // Shift the allocator so the second run's buffers land at other addresses.
  std::vector<std::vector<double>> ballast;
  for (int i = 1; i < 40; ++i) ballast.emplace_back(static_cast<std::size_t>(i * 3 + 1), 1.0);
  auto b = Learners::create(cfg, 11);
  train_run(cfg, Variant::HDWDRL, 11, b);
  CHECK(a.q.front().backbone() == b.q.front().backbone());
  CHECK(a.q.front().head_cov() == b.q.front().head_cov());
  CHECK(a.ac.critic() == b.ac.critic());
  CHECK(a.ac.actor() == b.ac.actor());
  CHECK(a.step.net() == b.step.net());
}

TEST_CASE("ablations pin their weighting levels") {
  const auto noeac = train_run(small_config(Variant::NoEAC, 3), Variant::NoEAC, 1);
  for (const auto& s : noeac.train) CHECK(s.alpha == 0.5);
  for (const auto& s : noeac.eval) CHECK(s.alpha == 0.5);
  const auto nosws = train_run(small_config(Variant::NoSWS, 3), Variant::NoSWS, 1);
  for (const auto& s : nosws.train) {
    CHECK(s.mean_delta == 0.0);
    CHECK(s.mean_w_cov == doctest::Approx(s.alpha).epsilon(1e-12));
  }
  const auto st = train_run(small_config(Variant::StaticWeight, 3), Variant::StaticWeight, 1);
  for (const auto& s : st.train) {
    CHECK(s.mean_w_cov == 0.5);
    CHECK(s.step_updates == 0);
    CHECK(s.ac_updates == 0);
  }
}

TEST_CASE("metrics round trip") {
  const auto cfg = small_config(Variant::NoSWS, 2);
  const auto run = train_run(cfg, Variant::NoSWS, 5);
  std::ostringstream os;
  write_metrics(os, std::span<const RunLog>(&run, 1));
  std::istringstream is(os.str());
  const auto back = read_metrics(is);
  REQUIRE(back.size() == 1);
  CHECK(back[0].seed == 5);
  CHECK(back[0].variant == Variant::NoSWS);
  std::ostringstream again;
  write_metrics(again, back);
  CHECK(again.str() == os.str());

  auto text = os.str();
  const auto third = text.find('\n', text.find('\n') + 1) + 1;
  const auto end = text.find('\n', third);
  text.replace(third, end - third, "1,NoSWS,train,0,oops");
  std::istringstream bad(text);
  try {
    read_metrics(bad);
    FAIL("malformed row accepted");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  std::istringstream nomagic("seed,variant\n");
  CHECK_THROWS_AS(read_metrics(nomagic), FormatError);
}

TEST_CASE("quantiles") {
  CHECK(median({3, 5, 7}) == 5.0);
  CHECK(median({7, 3, 5, 1}) == 4.0);
  CHECK(quantile({1, 2, 3, 4, 5}, 0.25) == 2.0);
  CHECK(quantile({10}, 0.75) == 10.0);
  CHECK_THROWS_AS(median({}), UsageError);
}

TEST_CASE("threshold statistics") {
  RunLog run;
  run.seed = 1;
  for (int k = 0; k < 4; ++k) run.train.push_back(stats(k, k >= 2 ? 0.9 : 0.5, 0.99, 100));
  // Checkpoint 1: one of three episodes succeeds, so the median does not.
  run.eval = {stats(1, 0.9, 0.99, 40), stats(1, 0.5, 0.5, 100), stats(1, 0.6, 0.99, 100)};
  // Checkpoint 3: two of three succeed.
  for (auto s : {stats(3, 0.9, 0.99, 30), stats(3, 0.85, 0.985, 34), stats(3, 0.2, 0.2, 100)})
    run.eval.push_back(s);
  const auto blocks = eval_blocks(run);
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0].k == 1);
  CHECK(blocks[1].coverage == 0.85);
  CHECK(blocks[1].slots == 34.0);
  CHECK(first_threshold_train(run, 0.8, 0.98, 4) == 2);
  CHECK(first_threshold_eval(run, 0.8, 0.98, 4) == 3);
  CHECK(first_threshold_eval(run, 0.95, 0.98, 4) == 4);
  CHECK(final_completion_time(run, 10) == doctest::Approx(67.0));
  CHECK(final_completion_time(run, 1) == 34.0);
}

TEST_CASE("aggregation is order-invariant") {
  std::vector<RunLog> runs;
  for (std::uint64_t seed : {3, 1, 2}) {
    RunLog r;
    r.seed = seed;
    r.variant = seed == 2 ? Variant::StaticWeight : Variant::HDWDRL;
    for (int k = 0; k < 3; ++k) {
      r.train.push_back(stats(k, 0.3 * k + 0.1 * static_cast<double>(seed), 0.99, 90 - k));
      r.eval.push_back(stats(k, 0.4 * k, 1.0, 80 - static_cast<int>(seed)));
    }
    runs.push_back(r);
  }
  SummaryOptions opts;
  const auto a = aggregate(runs, opts);
  std::reverse(runs.begin(), runs.end());
  const auto b = aggregate(runs, opts);
  CHECK(summary_json(a, opts) == summary_json(b, opts));
  REQUIRE(a.variants.size() == 2);
  const auto* h = a.find(Variant::HDWDRL);
  REQUIRE(h != nullptr);
  CHECK(h->seeds == std::vector<std::uint64_t>{1, 3});
  CHECK(h->first_eval == std::vector<int>{2, 2});
  CHECK(h->median_final_slots == 78.0);
  CHECK(a.find(Variant::NoEAC) == nullptr);

  // A single run is its own median.
  const RunLog one = runs.front();
  const auto s = aggregate(std::span<const RunLog>(&one, 1), opts);
  REQUIRE(s.variants.size() == 1);
  CHECK(s.variants[0].train_coverage[1].median == one.train[1].coverage);
  CHECK(s.variants[0].train_coverage[1].q25 == one.train[1].coverage);
}

TEST_CASE("config validation names the key") {
  auto c = small_config(Variant::HDWDRL, 1);
  c.weighting.static_cov = 1.5;
  try {
    validate(c);
    FAIL("accepted");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("static_cov") != std::string::npos);
  }
  c = small_config(Variant::HDWDRL, 1);
  c.experiment.episodes = -1;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = small_config(Variant::HDWDRL, 1);
  CHECK_NOTHROW(validate(c));
}
