#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "support/scenes.hpp"
#include "traprix/path_verifier.hpp"

using namespace traprix;
using namespace traprix::testing;

namespace {

std::size_t sampled_longest(const TrapezoidalMap& m) {
  std::size_t best = 0;
  for (const auto& slab : oracle::all_slab_samples(oracle::map_segments(m)))
    for (const auto& q : slab) best = std::max(best, m.locate(q).path_len);
  return best;
}

}  // namespace

TEST(MaxSearchPathLength, EmptyMap) {
  TrapezoidalMap m(frame10());
  EXPECT_EQ(max_search_path_length(m), (SearchPathStats{0, 1}));
}

TEST(MaxSearchPathLength, OneSegment) {
  TrapezoidalMap m(frame10());
  m.insert(S(-1, 0, 1, 1));
  EXPECT_EQ(max_search_path_length(m), (SearchPathStats{3, 4}));
  EXPECT_EQ(m.depth(), 4u);
}

TEST(MaxSearchPathLength, PrunesImpossibleBranches) {
  TrapezoidalMap m(frame10());
  m.insert(S(2, -4, 3, 2));
  m.insert(S(-4, -3, 4, 3));
  m.insert(S(-2, 3, -1, 2));
  const auto st = max_search_path_length(m);
  EXPECT_EQ(st.longest, 6u);
  EXPECT_EQ(m.depth(), 8u);
  EXPECT_EQ(st.longest, sampled_longest(m));
}

TEST(MaxSearchPathLength, MatchesExhaustiveSampling) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto segs = degenerate_scene(seed, 1 + seed % 30, 1000);
    auto order = segs;
    SplitMix64 rng(seed * 7);
    shuffle(std::span<Segment>(order), rng);
    const auto m = build_in_order(Box(P(-1001, -1001), P(1001, 1001)), order);
    const auto before = m.stats();
    const auto st = max_search_path_length(m);
    EXPECT_EQ(m.stats(), before);
    EXPECT_EQ(st.longest, sampled_longest(m)) << "seed " << seed;
    EXPECT_EQ(st.longest, oracle::max_path_by_cells(m));
    EXPECT_LE(st.longest + 1, m.depth());
    EXPECT_GE(st.feasible_paths, m.leaf_count());
  }
}

TEST(MaxSearchPathLength, CoverticalKeysUseSymbolicCells) {
  // Between two covertical keys some cells hold no real point; the search
  // paths into them still count.
  std::size_t strict = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto segs = degenerate_scene(seed, 1 + seed % 30);
    SplitMix64 rng(seed * 7);
    shuffle(std::span<Segment>(segs), rng);
    const auto m = build_in_order(frame10(), segs);
    const auto st = max_search_path_length(m);
    EXPECT_EQ(st.longest, oracle::max_path_by_cells(m)) << "seed " << seed;
    EXPECT_LE(sampled_longest(m), st.longest);
    strict += sampled_longest(m) < st.longest ? 1 : 0;
    EXPECT_LE(st.longest + 1, m.depth());
  }
  EXPECT_GT(strict, 0u);
}
