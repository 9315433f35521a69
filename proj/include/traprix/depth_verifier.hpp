#pragma once

#include <cstdint>
#include <queue>
#include <span>
#include <vector>

#include "traprix/coverage_tree.hpp"
#include "traprix/trapezoidal_map.hpp"

namespace traprix {

/// Rank of every segment of a map (frame walls included) in a bottom-to-top
/// order that agrees with the vertical order of every pair of segments whose
/// x-ranges overlap. Ranks run from 1 (bottom wall) to n_curves (top wall).
class CurveOrder {
 public:
  CurveOrder() = default;
  explicit CurveOrder(std::vector<std::int64_t> ranks) : ranks_(std::move(ranks)) {}

  std::size_t size() const { return ranks_.size(); }

  std::int64_t rank(SegmentId s) const {
    if (index_of(s) >= ranks_.size()) throw error(errc::unknown_curve, "segment has no rank");
    return ranks_[index_of(s)];
  }

 private:
  std::vector<std::int64_t> ranks_;
};

/// Topological order of the "immediately below" relation read off the live
/// trapezoids (bottom -> top). Ties go to the lexicographically smaller left
/// endpoint, then to the smaller id.
inline CurveOrder compute_order(const TrapezoidalMap& map) {
  const std::size_t n = map.segments().size();
  std::vector<std::vector<std::uint32_t>> above(n);
  std::vector<std::uint32_t> indegree(n, 0);
  for (auto id : map.live_trapezoids()) {
    const auto& t = map.trapezoid(id);
    above[index_of(t.bottom)].push_back(static_cast<std::uint32_t>(t.top));
    ++indegree[index_of(t.top)];
  }
  auto later = [&](std::uint32_t a, std::uint32_t b) {
    const auto c = cmp_lex(map.segment(SegmentId{a}).left(), map.segment(SegmentId{b}).left());
    return c != 0 ? c > 0 : a > b;
  };
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, decltype(later)> ready(later);
  for (std::uint32_t i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push(i);
  std::vector<std::int64_t> ranks(n, 0);
  std::int64_t next = 1;
  while (!ready.empty()) {
    const auto s = ready.top();
    ready.pop();
    ranks[s] = next++;
    for (auto t : above[s])
      if (--indegree[t] == 0) ready.push(t);
  }
  if (static_cast<std::size_t>(next - 1) != n) throw error(errc::cycle_detected, "below/above relation has a cycle");
  return CurveOrder(std::move(ranks));
}

/// One all-open rectangle per record: same lexicographic x-range, y from
/// the rank of the bottom to the rank of the top.
inline std::vector<OpenRect<Point>> reduce_trapezoids(const TrapezoidalMap& map, std::span<const TrapezoidRecord> log,
                                                       const CurveOrder& order) {
  std::vector<OpenRect<Point>> out;
  out.reserve(log.size());
  for (const auto& r : log) {
    OpenRect<Point> rect;
    rect.x_lo = map.point(r.left);
    rect.x_hi = map.point(r.right);
    rect.y_lo = order.rank(r.bottom);
    rect.y_hi = order.rank(r.top);
    out.push_back(std::move(rect));
  }
  return out;
}

struct ArrangementDepth {
  std::int64_t max_depth = 0;
  bool certified = false;
};

/// Maximum depth of the arrangement of every trapezoid the construction
/// ever created. A point of depth d has search paths of at most 3d nodes.
inline ArrangementDepth verify_arrangement_depth(const TrapezoidalMap& map, std::int64_t bound) {
  const auto order = compute_order(map);
  const auto log = map.log_records();
  const auto rects = reduce_trapezoids(map, log, order);
  ArrangementDepth out;
  out.max_depth = max_rectangle_depth(rects, LexLess{});
  out.certified = out.max_depth <= bound;
  return out;
}

}  // namespace traprix
