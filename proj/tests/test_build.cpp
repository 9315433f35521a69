#include <gtest/gtest.h>

#include <cmath>

#include "support/scenes.hpp"
#include "traprix/build.hpp"

using namespace traprix;
using namespace traprix::testing;

namespace {

constexpr double inf = INFINITY;

Scene scene_of(std::vector<Segment> segs) { return Scene{frame10(), std::move(segs)}; }

errc code_of(const Scene& scene, const BuildConfig& cfg = {}) {
  try {
    build(scene, cfg);
  } catch (const error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return errc::io_error;
}

}  // namespace

TEST(Build, EmptyScene) {
  for (auto v : {Verifier::none, Verifier::depth, Verifier::longest_path, Verifier::arrangement_depth}) {
    BuildConfig cfg;
    cfg.verifier = v;
    const auto r = build(scene_of({}), cfg);
    EXPECT_EQ(r.rebuilds(), 0u);
    EXPECT_EQ(r.map.stats(), (DagStats{0, 1, 1, 1}));
  }
}

TEST(Build, UnboundedConstantsBuildOnce) {
  const auto scene = gen_random_segments(150, 4);
  for (auto v : {Verifier::none, Verifier::depth, Verifier::longest_path, Verifier::arrangement_depth}) {
    BuildConfig cfg{v, inf, inf, 0, 9};
    const auto r = build(scene, cfg);
    ASSERT_EQ(r.attempts.size(), 1u);
    EXPECT_EQ(r.attempts[0].seed, derive_seed(9, 0));
    EXPECT_EQ(r.map.stats().n_segments, 150u);
  }
}

TEST(Build, Deterministic) {
  const auto scene = gen_random_segments(120, 2);
  BuildConfig cfg;
  cfg.seed = 77;
  const auto a = build(scene, cfg), b = build(scene, cfg);
  EXPECT_EQ(a.map.stats(), b.map.stats());
  EXPECT_EQ(a.map.log_records().size(), b.map.log_records().size());
  cfg.seed = 78;
  EXPECT_NE(build(scene, cfg).attempts[0].seed, a.attempts[0].seed);
}

TEST(Build, SuggestedOrderIsUsedOnTheFirstAttempt) {
  const auto scene = gen_sqrt_blocks(4);
  BuildConfig cfg;
  cfg.order = InsertionOrder::suggested;
  cfg.depth_c = inf;
  EXPECT_EQ(build(scene, cfg).map.stats(), build_in_order(scene.bbox, scene.segments).stats());
}

TEST(Build, CrossingInputIsRejected) {
  EXPECT_EQ(code_of(scene_of({S(-2, -2, 2, 2), S(-2, 2, 2, -2)})), errc::validation_failed);
  EXPECT_EQ(code_of(scene_of({S(-2, -2, 2, 2), S(-2, -2, 2, 2)})), errc::validation_failed);
  EXPECT_EQ(code_of(scene_of({S(-2, -2, 12, 2)})), errc::validation_failed);
}

TEST(Build, RebuildLimit) {
  BuildConfig cfg;
  cfg.size_c = 1;
  cfg.max_rebuilds = 3;
  EXPECT_EQ(code_of(gen_random_segments(30, 1), cfg), errc::rebuild_limit_exceeded);
}

TEST(Build, DepthModeRebuildsWhereLongestPathModeAccepts) {
  const auto scene = gen_sqrt_blocks(12);
  BuildConfig cfg;
  cfg.order = InsertionOrder::suggested;
  cfg.depth_c = 8;
  cfg.seed = 3;

  // Reference values on the top-to-bottom DAG.
  const auto forced = build_in_order(scene.bbox, scene.segments);
  const double bound = verifier_bound(cfg, scene.segments.size());
  ASSERT_GT(forced.depth(), bound);
  ASSERT_LE(static_cast<double>(max_search_path_length(forced).longest), bound);

  cfg.verifier = Verifier::depth;
  const auto by_depth = build(scene, cfg);
  EXPECT_GE(by_depth.rebuilds(), 1u);
  EXPECT_EQ(by_depth.attempts[0].outcome, Outcome::too_deep);
  EXPECT_EQ(by_depth.attempts[0].stats, forced.stats());
  EXPECT_EQ(by_depth.attempts[1].seed, derive_seed(3, 1));
  EXPECT_LE(by_depth.map.depth(), bound);

  cfg.verifier = Verifier::longest_path;
  const auto by_path = build(scene, cfg);
  EXPECT_EQ(by_path.rebuilds(), 0u);
  EXPECT_EQ(by_path.attempts[0].longest, max_search_path_length(forced).longest);
}

TEST(Build, ArrangementDepthCertifiesPaths) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    BuildConfig cfg;
    cfg.verifier = Verifier::arrangement_depth;
    cfg.seed = seed;
    const auto r = build(gen_random_segments(80, seed), cfg);
    const auto& last = r.attempts.back();
    ASSERT_TRUE(last.arrangement_depth);
    EXPECT_LE(static_cast<double>(*last.arrangement_depth), verifier_bound(cfg, 80));
    EXPECT_LE(max_search_path_length(r.map).longest, static_cast<std::size_t>(3 * *last.arrangement_depth));
  }
}

TEST(Build, DefaultsRarelyRebuildRandomScenes) {
  std::size_t rebuilds = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    BuildConfig cfg;
    cfg.verifier = Verifier::depth;
    cfg.seed = seed;
    rebuilds += build(gen_random_segments(200, seed + 100), cfg).rebuilds();
  }
  EXPECT_LE(rebuilds, 1u);
}

// Frozen after calibration: mean nodes per segment was about 9.7.
TEST(Build, ExpectedLinearSize) {
  const auto scene = gen_random_segments(500, 31);
  double sum = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    BuildConfig cfg;
    cfg.seed = seed;
    cfg.size_c = inf;
    sum += static_cast<double>(build(scene, cfg).map.stats().node_count) / 500;
  }
  EXPECT_LT(sum / 30, 11.0);
}
