#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "traprix/error.hpp"
#include "traprix/geometry.hpp"
#include "traprix/random.hpp"

namespace traprix {

/// A set of interior-disjoint segments inside a frame. The order of
/// `segments` is the suggested insertion order.
struct Scene {
  Box bbox{Point{Rational(-1), Rational(-1)}, Point{Rational(1), Rational(1)}};
  std::vector<Segment> segments;

  friend bool operator==(const Scene&, const Scene&) = default;
};

namespace detail {

struct GridSegment {
  std::int64_t x0, y0, x1, y1;
};

inline int orient(std::int64_t ax, std::int64_t ay, std::int64_t bx, std::int64_t by, std::int64_t cx, std::int64_t cy) {
  // Grid coordinates stay within 2^20, so the products fit comfortably.
  const std::int64_t d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
  return (d > 0) - (d < 0);
}

inline bool in_box(const GridSegment& s, std::int64_t x, std::int64_t y) {
  return std::min(s.x0, s.x1) <= x && x <= std::max(s.x0, s.x1) && std::min(s.y0, s.y1) <= y && y <= std::max(s.y0, s.y1);
}

// Any common point at all, endpoints included.
inline bool touches(const GridSegment& a, const GridSegment& b) {
  const int o1 = orient(a.x0, a.y0, a.x1, a.y1, b.x0, b.y0);
  const int o2 = orient(a.x0, a.y0, a.x1, a.y1, b.x1, b.y1);
  const int o3 = orient(b.x0, b.y0, b.x1, b.y1, a.x0, a.y0);
  const int o4 = orient(b.x0, b.y0, b.x1, b.y1, a.x1, a.y1);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return (o1 == 0 && in_box(a, b.x0, b.y0)) || (o2 == 0 && in_box(a, b.x1, b.y1)) ||
         (o3 == 0 && in_box(b, a.x0, a.y0)) || (o4 == 0 && in_box(b, a.x1, a.y1));
}

}  // namespace detail

inline constexpr std::int64_t random_grid = std::int64_t{1} << 20;
inline constexpr std::uint64_t max_consecutive_rejections = 1'000'000;

/// n segments between random points of [-1,1]^2 (on a 2^-20 grid), drawn
/// one at a time; a candidate touching any accepted segment is discarded
/// and vertical candidates are redrawn. The frame is [-2,2]^2. Throws
/// GenerationStalled after `rejection_limit` rejections in a row.
inline Scene gen_random_segments(std::size_t n, std::uint64_t seed,
                                 std::uint64_t rejection_limit = max_consecutive_rejections) {
  SplitMix64 rng(seed);
  std::vector<detail::GridSegment> accepted;
  accepted.reserve(n);
  std::uint64_t rejected = 0;
  while (accepted.size() < n) {
    detail::GridSegment c{rng.between(-random_grid, random_grid), rng.between(-random_grid, random_grid),
                          rng.between(-random_grid, random_grid), rng.between(-random_grid, random_grid)};
    if (c.x0 == c.x1) continue;
    const bool clash = std::any_of(accepted.begin(), accepted.end(), [&](const auto& a) { return detail::touches(a, c); });
    if (!clash) {
      accepted.push_back(c);
      rejected = 0;
    } else if (++rejected >= rejection_limit) {
      throw error(errc::generation_stalled, "too many consecutive rejections after " + std::to_string(accepted.size()) + " segments");
    }
  }
  Scene scene;
  scene.bbox = Box({Rational(-2), Rational(-2)}, {Rational(2), Rational(2)});
  for (const auto& s : accepted)
    scene.segments.emplace_back(Point{Rational(s.x0, random_grid), Rational(s.y0, random_grid)},
                                Point{Rational(s.x1, random_grid), Rational(s.y1, random_grid)});
  return scene;
}

/// Block sizes of the recursive construction: max(1, floor(n / 2^i)) for
/// i = 1, 2, ... until n segments are used up.
inline std::vector<std::size_t> recursive_schedule(std::size_t n) {
  std::vector<std::size_t> out;
  std::size_t left = n;
  for (std::size_t i = 1; left > 0; ++i) {
    const std::size_t want = i < 64 ? std::max<std::size_t>(1, n >> i) : 1;
    out.push_back(std::min(left, want));
    left -= out.back();
  }
  return out;
}

namespace detail {

// Horizontal segments in generation (top to bottom) order, local frame:
// x in [0, width], y in [-height, 0].
struct Layout {
  std::vector<GridSegment> segs;
  std::int64_t width = 0;
  std::int64_t height = 0;
  std::size_t sink = 0;  // lowest segment, inserted last
};

inline void translate(Layout& l, std::int64_t dx, std::int64_t dy) {
  for (auto& s : l.segs) {
    s.x0 += dx;
    s.x1 += dx;
    s.y0 += dy;
    s.y1 += dy;
  }
}

// A cover segment with `inner` tucked beneath it at offset (1, -1).
inline Layout block(Layout inner) {
  Layout out;
  if (inner.segs.empty()) {
    out.segs.push_back({0, 0, 2, 0});
    out.width = 2;
    return out;
  }
  translate(inner, 1, -1);
  out.width = inner.width + 2;
  out.height = inner.height + 1;
  out.segs.push_back({0, 0, out.width, 0});
  out.sink = inner.sink + 1;
  out.segs.insert(out.segs.end(), inner.segs.begin(), inner.segs.end());
  return out;
}

// Each block goes left of and below its predecessor; its cover then reaches
// right to end inside the predecessor's sink.
inline Layout arrange(std::vector<Layout> blocks) {
  Layout out;
  std::int64_t left = 0;   // left edge of the previous block
  std::int64_t bottom = 0; // bottom edge of the previous block
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    auto& b = blocks[i];
    if (i == 0) {
      left = 0;
      bottom = -b.height;
    } else {
      translate(b, left - 1 - b.width, bottom - 1);
      const auto& sink = out.segs[out.sink];
      b.segs.front().x1 = std::min(sink.x0, sink.x1) + 1;
      left = left - 1 - b.width;
      bottom = bottom - 1 - b.height;
    }
    out.sink = out.segs.size() + b.sink;
    out.segs.insert(out.segs.end(), b.segs.begin(), b.segs.end());
  }
  if (!blocks.empty()) {
    out.width = blocks.front().width - left;
    out.height = -bottom;
  }
  translate(out, -left, 0);
  return out;
}

// Spreads x apart and breaks ties by generation index so that no two
// endpoints share an x-coordinate; strict inequalities survive.
inline Scene to_scene(const std::vector<GridSegment>& segs) {
  Scene scene;
  if (segs.empty()) return scene;
  const std::int64_t spread = 2 * static_cast<std::int64_t>(segs.size()) + 1;
  std::int64_t x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;
  std::vector<GridSegment> placed;
  std::int64_t tag = 0;
  for (const auto& s : segs) {
    GridSegment p{s.x0 * spread + tag, s.y0, s.x1 * spread + tag + 1, s.y1};
    tag += 2;
    placed.push_back(p);
  }
  x_lo = x_hi = placed.front().x0;
  y_lo = y_hi = placed.front().y0;
  for (const auto& p : placed) {
    x_lo = std::min({x_lo, p.x0, p.x1});
    x_hi = std::max({x_hi, p.x0, p.x1});
    y_lo = std::min({y_lo, p.y0, p.y1});
    y_hi = std::max({y_hi, p.y0, p.y1});
  }
  scene.bbox = Box({Rational(x_lo - 1), Rational(y_lo - 1)}, {Rational(x_hi + 1), Rational(y_hi + 1)});
  for (const auto& p : placed)
    scene.segments.emplace_back(Point{Rational(p.x0), Rational(p.y0)}, Point{Rational(p.x1), Rational(p.y1)});
  return scene;
}

inline Layout stack(std::size_t s) {
  Layout inner;
  for (std::size_t i = 1; i < s; ++i) inner = block(std::move(inner));
  return block(std::move(inner));
}

inline Layout recursive_layout(std::size_t n);

inline Layout recursive_block(std::size_t s) { return block(s > 1 ? recursive_layout(s - 1) : Layout{}); }

inline Layout recursive_layout(std::size_t n) {
  std::vector<Layout> blocks;
  for (const auto s : recursive_schedule(n)) blocks.push_back(recursive_block(s));
  return arrange(std::move(blocks));
}

}  // namespace detail

/// k blocks of k horizontal segments each: a cover with a shrinking stack
/// beneath it. Suggested order is top to bottom.
inline Scene gen_sqrt_blocks(std::size_t k) {
  if (k == 0) throw error(errc::validation_failed, "block count must be positive");
  std::vector<detail::Layout> blocks(k, detail::stack(k));
  return detail::to_scene(detail::arrange(std::move(blocks)).segs);
}

/// Blocks of n/2, n/4, ... segments, each a cover over the same scheme
/// applied to the rest of the block. Suggested order is top to bottom.
inline Scene gen_recursive_blocks(std::size_t n) {
  if (n == 0) throw error(errc::validation_failed, "segment count must be positive");
  return detail::to_scene(detail::recursive_layout(n).segs);
}

}  // namespace traprix
