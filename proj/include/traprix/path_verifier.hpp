#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "traprix/trapezoidal_map.hpp"

namespace traprix {

struct SearchPathStats {
  std::size_t longest = 0;            // L, internal nodes on the longest feasible search path
  std::uint64_t feasible_paths = 0;   // feasible root-to-leaf descents

  friend bool operator==(const SearchPathStats&, const SearchPathStats&) = default;
};

/// Longest search path that some query point can actually follow, found by
/// a descent that only splits at x-nodes whose key falls inside the
/// interval of keys still reachable. Both interval ends are open; the frame
/// corners bound the initial interval because queries lie strictly inside.
inline SearchPathStats max_search_path_length(const TrapezoidalMap& map) {
  struct Frame {
    NodeId node;
    PointId lo;
    PointId hi;
    std::uint32_t len;
  };
  SearchPathStats out;
  std::vector<Frame> stack{{map.root(), TrapezoidalMap::frame_left, TrapezoidalMap::frame_right, 0}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    const DagNode& n = map.node(f.node);
    if (n.kind == NodeKind::leaf) {
      out.longest = std::max<std::size_t>(out.longest, f.len);
      ++out.feasible_paths;
      continue;
    }
    const std::uint32_t len = f.len + 1;
    if (n.kind == NodeKind::y) {
      stack.push_back({n.first, f.lo, f.hi, len});
      stack.push_back({n.second, f.lo, f.hi, len});
      continue;
    }
    const Point& key = map.point(n.point());
    if (cmp_lex(key, map.point(f.lo)) <= 0) {
      stack.push_back({n.second, f.lo, f.hi, len});
    } else if (cmp_lex(key, map.point(f.hi)) >= 0) {
      stack.push_back({n.first, f.lo, f.hi, len});
    } else {
      // A query equal to the key stops here.
      out.longest = std::max<std::size_t>(out.longest, len);
      stack.push_back({n.first, f.lo, n.point(), len});
      stack.push_back({n.second, n.point(), f.hi, len});
    }
  }
  return out;
}

}  // namespace traprix
