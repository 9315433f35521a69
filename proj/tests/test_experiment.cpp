#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "traprix/experiment.hpp"

using namespace traprix;

namespace {

RatioSpec random_spec(std::vector<std::size_t> sizes, std::size_t repeats, std::uint64_t seed) {
  RatioSpec spec;
  spec.sizes = std::move(sizes);
  spec.repeats = repeats;
  spec.config.seed = seed;
  return spec;
}

std::string csv(const RatioReport& report) {
  std::ostringstream out;
  write_report(report, out);
  return out.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(ExperimentRow, CsvRoundTrip) {
  ExperimentRow r{"random", 250, 12345678901234567890ull, 34, 30, 2310, 2661, 20, 1, std::nullopt};
  EXPECT_EQ(to_csv(r), "random,250,12345678901234567890,34,30,1.133333,2310,2661,20,1,");
  EXPECT_EQ(parse_csv_row(to_csv(r)), r);
  r.ms = 12.5;
  EXPECT_EQ(to_csv(r), "random,250,12345678901234567890,34,30,1.133333,2310,2661,20,1,12.500");
  EXPECT_EQ(parse_csv_row(to_csv(r)), r);
  EXPECT_THROW(parse_csv_row("a,b"), error);
  EXPECT_THROW(parse_csv_row("random,250,1,34,30,9.0,2310,2661,20,1,"), error);
  EXPECT_THROW(parse_csv_row("random,x,1,34,30,1.133333,2310,2661,20,1,"), error);
}

TEST(ExperimentRow, Invariants) {
  ExperimentRow ok{"s", 1, 0, 4, 3, 7, 4, 2, 0, std::nullopt};
  EXPECT_NO_THROW(check_row(ok));
  auto longer = ok;
  longer.longest = 5;
  EXPECT_THROW(check_row(longer), error);
  auto shallow = ok;
  shallow.arrangement_depth = 0;
  EXPECT_THROW(check_row(shallow), error);
  ExperimentRow empty{"s", 0, 0, 1, 0, 1, 1, 1, 0, std::nullopt};
  EXPECT_DOUBLE_EQ(empty.ratio(), 1.0);
}

TEST(Measure, SmallScenes) {
  const auto empty = measure("empty", Scene{}, {});
  EXPECT_EQ(empty.depth, 1u);
  EXPECT_EQ(empty.longest, 0u);
  EXPECT_EQ(empty.rebuilds, 0u);
  EXPECT_EQ(empty.arrangement_depth, 1);

  Scene one;
  one.segments.emplace_back(Point{Rational(-1, 2), Rational(0)}, Point{Rational(1, 2), Rational(1, 4)});
  const auto r = measure("one", one, {});
  EXPECT_EQ(r.depth, 4u);
  EXPECT_EQ(r.longest, 3u);
  EXPECT_EQ(r.nodes, 7u);
  EXPECT_EQ(r.paths, 4u);
  EXPECT_EQ(r.arrangement_depth, 2);
  EXPECT_FALSE(r.ms);
  EXPECT_TRUE(measure("one", one, {}, true).ms);
}

TEST(Measure, SqrtBlocksInSuggestedOrder) {
  BuildConfig cfg;
  cfg.order = InsertionOrder::suggested;
  EXPECT_GT(measure("sqrt", gen_sqrt_blocks(12), cfg).ratio(), 2.0);
}

TEST(RunRatio, RowsAndSummaries) {
  const auto report = run_ratio(random_spec({64, 128}, 3, 5));
  ASSERT_EQ(report.rows.size(), 6u);
  ASSERT_EQ(report.summaries.size(), 2u);
  const auto text = lines(csv(report));
  ASSERT_EQ(text.size(), 1u + 6u + 2u);
  EXPECT_EQ(text[0], csv_header);
  for (std::size_t i = 0; i < 6; ++i) {
    const auto row = parse_csv_row(text[1 + i]);
    EXPECT_EQ(row, report.rows[i]);
    EXPECT_LE(row.longest, row.depth);
    EXPECT_EQ(row.n, i < 3 ? 64u : 128u);
    EXPECT_EQ(row.seed, repeat_seed(5, row.n, i % 3));
  }
  for (std::size_t i = 0; i < 2; ++i) {
    double sum = 0, lo = 1e9, hi = 0;
    for (std::size_t r = 0; r < 3; ++r) {
      const double q = report.rows[3 * i + r].ratio();
      sum += q;
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    EXPECT_DOUBLE_EQ(report.summaries[i].mean, sum / 3);
    EXPECT_EQ(report.summaries[i].min, lo);
    EXPECT_EQ(report.summaries[i].max, hi);
    EXPECT_EQ(text[7 + i].rfind("# summary scenario=random n=" + std::to_string(report.summaries[i].n), 0), 0u);
  }
}

TEST(RunRatio, RepeatsShareTheScene) {
  const auto report = run_ratio(random_spec({100}, 4, 8));
  std::set<std::uint64_t> seeds;
  for (const auto& r : report.rows) seeds.insert(r.seed);
  EXPECT_EQ(seeds.size(), 4u);
  // Every build sees the same scene, so the log of a rebuilt DAG is
  // reproducible from the scene seed alone.
  const auto scene = gen_random_segments(100, scene_seed(8, 100));
  BuildConfig cfg;
  cfg.seed = report.rows[2].seed;
  EXPECT_EQ(measure("random", scene, cfg), report.rows[2]);
}

TEST(RunRatio, DeterministicAcrossJobs) {
  auto spec = random_spec({50, 90}, 5, 21);
  const auto serial = csv(run_ratio(spec));
  EXPECT_EQ(csv(run_ratio(spec)), serial);
  spec.jobs = 4;
  EXPECT_EQ(csv(run_ratio(spec)), serial);
}

TEST(RunRatio, FileAndConstructedScenarios) {
  RatioSpec spec;
  spec.kind = ScenarioKind::file;
  spec.name = "fixed";
  spec.scene = gen_random_segments(30, 2);
  spec.repeats = 2;
  const auto file = run_ratio(spec);
  ASSERT_EQ(file.rows.size(), 2u);
  EXPECT_EQ(file.rows[0].n, 30u);

  spec = RatioSpec{};
  spec.kind = ScenarioKind::sqrt;
  spec.name = "sqrt";
  spec.sizes = {3};
  spec.repeats = 2;
  EXPECT_EQ(run_ratio(spec).rows[0].n, 9u);
}

TEST(RunRatio, ErrorsPropagateFromWorkers) {
  auto spec = random_spec({40}, 4, 1);
  spec.config.size_c = 1;
  spec.config.max_rebuilds = 0;
  spec.jobs = 3;
  try {
    run_ratio(spec);
    ADD_FAILURE();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::rebuild_limit_exceeded);
  }
}
