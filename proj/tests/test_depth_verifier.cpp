#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "support/scenes.hpp"
#include "traprix/depth_verifier.hpp"
#include "traprix/path_verifier.hpp"

using namespace traprix;
using namespace traprix::testing;

namespace {

// Every pair of segments with overlapping lexicographic ranges is ranked
// by its vertical order inside the overlap.
void expect_order_respects_overlaps(const TrapezoidalMap& m, const CurveOrder& ord) {
  const auto segs = oracle::map_segments(m);
  const auto keys = oracle::sorted_keys(segs);
  for (std::size_t i = 0; i < segs.size(); ++i)
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      const bool wall = i < 2;
      const Point& lo = wall ? segs[j].left() : std::max(segs[i].left(), segs[j].left(), LexLess{});
      const Point& hi = wall ? segs[j].right() : std::min(segs[i].right(), segs[j].right(), LexLess{});
      if (cmp_lex(lo, hi) >= 0) continue;
      const auto k = static_cast<std::size_t>(std::lower_bound(keys.begin(), keys.end(), lo, LexLess{}) - keys.begin());
      const bool i_below = i == 0 || (i != 1 && oracle::detail::lower_in_slab(segs[i], segs[j], keys[k], keys[k + 1]));
      const auto ri = ord.rank(SegmentId{static_cast<std::uint32_t>(i)});
      const auto rj = ord.rank(SegmentId{static_cast<std::uint32_t>(j)});
      EXPECT_EQ(i_below, ri < rj) << segs[i] << " vs " << segs[j];
    }
}

}  // namespace

TEST(ComputeOrder, StackedHorizontals) {
  TrapezoidalMap m(frame10());
  m.insert(S(-3, 2, 3, 2));
  m.insert(S(-3, 0, 3, 0));
  m.insert(S(-3, 1, 3, 1));
  const auto ord = compute_order(m);
  EXPECT_EQ(ord.rank(TrapezoidalMap::bottom_wall), 1);
  EXPECT_EQ(ord.rank(SegmentId{3}), 2);
  EXPECT_EQ(ord.rank(SegmentId{4}), 3);
  EXPECT_EQ(ord.rank(SegmentId{2}), 4);
  EXPECT_EQ(ord.rank(TrapezoidalMap::top_wall), 5);
}

TEST(ComputeOrder, DisjointRangesFollowLeftEndpoints) {
  TrapezoidalMap m(frame10());
  m.insert(S(2, 5, 4, 5));
  m.insert(S(-4, -5, -2, -5));
  const auto ord = compute_order(m);
  EXPECT_LT(ord.rank(SegmentId{3}), ord.rank(SegmentId{2}));
  expect_order_respects_overlaps(m, ord);
}

TEST(ComputeOrder, RespectsEveryOverlappingPair) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto m = build_in_order(frame10(), degenerate_scene(seed, 20));
    const auto ord = compute_order(m);
    EXPECT_EQ(ord.rank(TrapezoidalMap::bottom_wall), 1);
    EXPECT_EQ(ord.rank(TrapezoidalMap::top_wall), static_cast<std::int64_t>(m.segments().size()));
    std::vector<std::int64_t> ranks;
    for (std::uint32_t i = 0; i < m.segments().size(); ++i) ranks.push_back(ord.rank(SegmentId{i}));
    std::sort(ranks.begin(), ranks.end());
    for (std::size_t i = 0; i < ranks.size(); ++i) ASSERT_EQ(ranks[i], static_cast<std::int64_t>(i + 1));
    expect_order_respects_overlaps(m, ord);
  }
}

TEST(ReduceTrapezoids, FrameOnly) {
  TrapezoidalMap m(frame10());
  const auto ord = compute_order(m);
  const auto log = m.log_records();
  const auto rects = reduce_trapezoids(m, log, ord);
  ASSERT_EQ(rects.size(), 1u);
  EXPECT_EQ(rects[0].x_lo, P(-10, -10));
  EXPECT_EQ(rects[0].x_hi, P(10, 10));
  EXPECT_EQ(rects[0].y_lo, 1);
  EXPECT_EQ(rects[0].y_hi, 2);
  EXPECT_FALSE(rects[0].left_closed || rects[0].right_closed || rects[0].bottom_closed || rects[0].top_closed);
}

TEST(ReduceTrapezoids, TwoSegmentSceneTrapezoidAboveFirst) {
  TrapezoidalMap m(frame10());
  m.insert(S(0, 0, 4, 0));
  m.insert(S(-4, -2, 2, -1));
  const auto ord = compute_order(m);
  const auto log = m.log_records();
  const auto rects = reduce_trapezoids(m, log, ord);
  // The live trapezoid above the first segment, bounded by the frame top.
  const auto a = std::get<TrapezoidId>(m.locate(P(2, 5)).where);
  const auto& r = rects[index_of(a)];
  EXPECT_EQ(r.y_hi, ord.rank(TrapezoidalMap::top_wall));
  EXPECT_EQ(r.y_lo, ord.rank(SegmentId{2}));
  EXPECT_EQ(r.x_lo, P(0, 0));
  EXPECT_EQ(r.x_hi, P(4, 0));
}

TEST(ReduceTrapezoids, UnknownCurve) {
  TrapezoidalMap m(frame10());
  m.insert(S(0, 0, 4, 0));
  const CurveOrder partial(std::vector<std::int64_t>{1, 2});
  const auto log = m.log_records();
  try {
    reduce_trapezoids(m, log, partial);
    ADD_FAILURE();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::unknown_curve);
  }
}

TEST(ReduceTrapezoids, ZeroWidthRecordsKept) {
  TrapezoidalMap m(frame10());
  m.insert(S(0, 0, 4, 0));
  m.insert(S(0, 3, 5, 4));
  const auto ord = compute_order(m);
  const auto log = m.log_records();
  const auto rects = reduce_trapezoids(m, log, ord);
  EXPECT_EQ(rects.size(), log.size());
  bool covertical = false;
  for (const auto& r : rects) covertical = covertical || (r.x_lo.x == r.x_hi.x);
  EXPECT_TRUE(covertical);
}

TEST(VerifyArrangementDepth, SmallMaps) {
  TrapezoidalMap m(frame10());
  EXPECT_EQ(verify_arrangement_depth(m, 1).max_depth, 1);
  EXPECT_TRUE(verify_arrangement_depth(m, 1).certified);
  m.insert(S(-2, 1, 3, 2));
  const auto r = verify_arrangement_depth(m, 1);
  EXPECT_EQ(r.max_depth, 2);
  EXPECT_FALSE(r.certified);
  EXPECT_EQ(static_cast<std::size_t>(r.max_depth), oracle::max_cover_by_cells(m));
}

TEST(VerifyArrangementDepth, EqualsDirectCoverCount) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto segs = degenerate_scene(seed, 1 + seed % 20);
    SplitMix64 rng(seed);
    shuffle(std::span<Segment>(segs), rng);
    const auto m = build_in_order(frame10(), segs);
    const auto depth = verify_arrangement_depth(m, 0).max_depth;
    ASSERT_EQ(static_cast<std::size_t>(depth), oracle::max_cover_by_cells(m)) << "seed " << seed;
    // Real query points never see more than the cells do.
    for (const auto& slab : oracle::all_slab_samples(oracle::map_segments(m)))
      for (const auto& q : slab) ASSERT_LE(oracle::cover_count(m, q), static_cast<std::size_t>(depth));
    EXPECT_GE(3 * depth, static_cast<std::int64_t>(max_search_path_length(m).longest));
  }
}
