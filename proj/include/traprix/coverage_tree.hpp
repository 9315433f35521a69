#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "traprix/error.hpp"
#include "traprix/random.hpp"

namespace traprix {

/// Axis-parallel rectangle whose four sides are independently open or
/// closed. x is an arbitrary ordered key, y an integer rank.
template <class Key>
struct OpenRect {
  Key x_lo;
  Key x_hi;
  std::int64_t y_lo = 0;
  std::int64_t y_hi = 0;
  bool left_closed = false;
  bool right_closed = false;
  bool bottom_closed = false;
  bool top_closed = false;
};

/// Balanced tree over the 2m - 1 elementary x-intervals
/// [x_0,x_0], (x_0,x_1), [x_1,x_1], ..., [x_{m-1},x_{m-1}]
/// supporting range additions while remembering, per leaf, the largest
/// coverage it ever had.
///
/// Every internal node keeps one pending pair per child: (total added,
/// largest running total) for operations that covered the whole child and
/// were not pushed yet. A leaf keeps (c, c_m).
class CoverageTree {
 public:
  explicit CoverageTree(std::size_t leaves) : leaves_(leaves), nodes_(leaves == 0 ? 0 : 4 * leaves) {}

  std::size_t leaf_count() const { return leaves_; }

  /// Adds d to every leaf in [first, last].
  void add(std::size_t first, std::size_t last, std::int64_t d) {
    if (leaves_ == 0 || first > last) return;
    add(1, 0, leaves_ - 1, first, last, d);
  }

  /// Pushes every pending pair down to the leaves and returns max c_m.
  std::int64_t flush_max() {
    if (leaves_ == 0) return 0;
    flush(1, 0, leaves_ - 1);
    std::int64_t best = 0;
    collect(1, 0, leaves_ - 1, best);
    return best;
  }

  struct LeafState {
    std::int64_t current;
    std::int64_t max;
  };

  /// Current and historical maximum coverage of every leaf, evaluated from
  /// the stored counters without modifying them: c + t and max(c_m, c + t_m).
  std::vector<LeafState> audit() const {
    std::vector<LeafState> out(leaves_);
    std::vector<std::pair<std::int64_t, std::int64_t>> path;
    if (leaves_ != 0) audit(1, 0, leaves_ - 1, path, out);
    return out;
  }

 private:
  struct Node {
    std::int64_t l = 0, l_m = 0, r = 0, r_m = 0;  // internal
    std::int64_t c = 0, c_m = 0;                  // leaf
  };

  static void compose(std::int64_t& t, std::int64_t& t_m, std::int64_t later, std::int64_t later_m) {
    t_m = std::max(t_m, t + later_m);
    t += later;
  }

  void push_into(std::size_t child, std::size_t lo, std::size_t hi, std::int64_t t, std::int64_t t_m) {
    Node& n = nodes_[child];
    if (lo == hi) {
      n.c_m = std::max(n.c_m, n.c + t_m);
      n.c += t;
    } else {
      compose(n.l, n.l_m, t, t_m);
      compose(n.r, n.r_m, t, t_m);
    }
  }

  void push(std::size_t at, std::size_t lo, std::size_t hi) {
    Node& n = nodes_[at];
    const std::size_t mid = lo + (hi - lo) / 2;
    if (n.l != 0 || n.l_m != 0) push_into(2 * at, lo, mid, n.l, n.l_m);
    if (n.r != 0 || n.r_m != 0) push_into(2 * at + 1, mid + 1, hi, n.r, n.r_m);
    n.l = n.l_m = n.r = n.r_m = 0;
  }

  void add(std::size_t at, std::size_t lo, std::size_t hi, std::size_t first, std::size_t last, std::int64_t d) {
    if (lo == hi) {
      Node& n = nodes_[at];
      n.c += d;
      n.c_m = std::max(n.c_m, n.c);
      return;
    }
    push(at, lo, hi);
    const std::size_t mid = lo + (hi - lo) / 2;
    Node& n = nodes_[at];
    if (first <= lo && mid <= last) {
      n.l += d;
      n.l_m = std::max(n.l_m, n.l);
    } else if (first <= mid) {
      add(2 * at, lo, mid, first, last, d);
    }
    if (first <= mid + 1 && hi <= last) {
      n.r += d;
      n.r_m = std::max(n.r_m, n.r);
    } else if (last > mid) {
      add(2 * at + 1, mid + 1, hi, first, last, d);
    }
  }

  void flush(std::size_t at, std::size_t lo, std::size_t hi) {
    if (lo == hi) return;
    push(at, lo, hi);
    const std::size_t mid = lo + (hi - lo) / 2;
    flush(2 * at, lo, mid);
    flush(2 * at + 1, mid + 1, hi);
  }

  void collect(std::size_t at, std::size_t lo, std::size_t hi, std::int64_t& best) const {
    if (lo == hi) {
      best = std::max(best, nodes_[at].c_m);
      return;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    collect(2 * at, lo, mid, best);
    collect(2 * at + 1, mid + 1, hi, best);
  }

  // Pending pairs deeper in the tree predate the ones above them.
  void audit(std::size_t at, std::size_t lo, std::size_t hi, std::vector<std::pair<std::int64_t, std::int64_t>>& path,
             std::vector<LeafState>& out) const {
    const Node& n = nodes_[at];
    if (lo == hi) {
      std::int64_t t = 0, t_m = 0;
      for (auto it = path.rbegin(); it != path.rend(); ++it) compose(t, t_m, it->first, it->second);
      out[lo] = {n.c + t, std::max(n.c_m, n.c + t_m)};
      return;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    path.emplace_back(n.l, n.l_m);
    audit(2 * at, lo, mid, path, out);
    path.back() = {n.r, n.r_m};
    audit(2 * at + 1, mid + 1, hi, path, out);
    path.pop_back();
  }

  std::size_t leaves_;
  std::vector<Node> nodes_;
};

/// Event groups at equal y, in the order a downward sweep must process them.
enum class EventGroup : std::uint8_t {
  close_open_bottom = 0,
  open_closed_top = 1,
  close_closed_bottom = 2,
  open_open_top = 3,
};

struct SweepEvent {
  std::int64_t y;
  EventGroup group;
  std::size_t rect;
  std::size_t first_leaf;
  std::size_t last_leaf;
  std::int64_t delta;
};

struct SweepOptions {
  /// Processing order of the four groups at equal y. Anything but the
  /// identity gives wrong answers on shared boundaries.
  std::array<EventGroup, 4> group_order{EventGroup::close_open_bottom, EventGroup::open_closed_top,
                                        EventGroup::close_closed_bottom, EventGroup::open_open_top};
  /// Shuffle events inside each (y, group) bucket.
  std::optional<std::uint64_t> shuffle_seed;
};

/// Distinct sorted x-keys of the rectangles and the leaf count of the tree.
template <class Key, class Less = std::less<Key>>
struct KeyLine {
  std::vector<Key> keys;
  Less less{};

  explicit KeyLine(const std::vector<OpenRect<Key>>& rects, Less cmp = {}) : less(cmp) {
    for (const auto& r : rects) {
      keys.push_back(r.x_lo);
      keys.push_back(r.x_hi);
    }
    std::sort(keys.begin(), keys.end(), less);
    keys.erase(std::unique(keys.begin(), keys.end(), [&](const Key& a, const Key& b) { return !less(a, b) && !less(b, a); }),
               keys.end());
  }

  std::size_t leaf_count() const { return keys.empty() ? 0 : 2 * keys.size() - 1; }

  std::size_t index(const Key& k) const {
    return static_cast<std::size_t>(std::lower_bound(keys.begin(), keys.end(), k, less) - keys.begin());
  }

  /// Leaf range covered by the x-side of r, or nullopt if it is empty.
  std::optional<std::pair<std::size_t, std::size_t>> leaves(const OpenRect<Key>& r) const {
    const std::size_t i = index(r.x_lo);
    const std::size_t j = index(r.x_hi);
    const std::size_t first = r.left_closed ? 2 * i : 2 * i + 1;
    if (j == 0 && !r.right_closed) return std::nullopt;
    const std::size_t last = r.right_closed ? 2 * j : 2 * j - 1;
    if (first > last) return std::nullopt;
    return std::pair{first, last};
  }
};

template <class Key>
void check_rects(const std::vector<OpenRect<Key>>& rects) {
  for (const auto& r : rects)
    if (!(r.y_lo < r.y_hi)) throw error(errc::invalid_rectangle, "rectangle needs y_lo < y_hi");
}

/// Events of the downward sweep, already in processing order.
template <class Key, class Less = std::less<Key>>
std::vector<SweepEvent> sweep_events(const std::vector<OpenRect<Key>>& rects, const KeyLine<Key, Less>& line,
                                     const SweepOptions& opts = {}) {
  check_rects(rects);
  std::vector<SweepEvent> events;
  for (std::size_t i = 0; i < rects.size(); ++i) {
    const auto& r = rects[i];
    if (line.less(r.x_hi, r.x_lo)) throw error(errc::invalid_rectangle, "rectangle needs x_lo <= x_hi");
    const auto range = line.leaves(r);
    if (!range) continue;
    events.push_back({r.y_hi, r.top_closed ? EventGroup::open_closed_top : EventGroup::open_open_top, i, range->first,
                      range->second, +1});
    events.push_back({r.y_lo, r.bottom_closed ? EventGroup::close_closed_bottom : EventGroup::close_open_bottom, i,
                      range->first, range->second, -1});
  }
  std::array<int, 4> rank{};
  for (int k = 0; k < 4; ++k) rank[static_cast<int>(opts.group_order[k])] = k;
  std::stable_sort(events.begin(), events.end(), [&](const SweepEvent& a, const SweepEvent& b) {
    if (a.y != b.y) return a.y > b.y;
    return rank[static_cast<int>(a.group)] < rank[static_cast<int>(b.group)];
  });
  if (opts.shuffle_seed) {
    SplitMix64 rng(*opts.shuffle_seed);
    for (std::size_t lo = 0; lo < events.size();) {
      std::size_t hi = lo;
      while (hi < events.size() && events[hi].y == events[lo].y && events[hi].group == events[lo].group) ++hi;
      shuffle(std::span<SweepEvent>(events.data() + lo, hi - lo), rng);
      lo = hi;
    }
  }
  return events;
}

/// Maximum number of rectangles sharing a point, honoring side flags.
template <class Key, class Less = std::less<Key>>
std::int64_t max_rectangle_depth(const std::vector<OpenRect<Key>>& rects, Less less = {}, const SweepOptions& opts = {}) {
  const KeyLine<Key, Less> line(rects, less);
  CoverageTree tree(line.leaf_count());
  for (const auto& e : sweep_events(rects, line, opts)) tree.add(e.first_leaf, e.last_leaf, e.delta);
  return tree.flush_max();
}

/// Reference answer: cover count at every key and every gap between keys,
/// crossed with every rank and the half-rank just above it.
template <class Key, class Less = std::less<Key>>
std::int64_t brute_force_depth(const std::vector<OpenRect<Key>>& rects, Less less = {}) {
  check_rects(rects);
  const KeyLine<Key, Less> line(rects, less);
  std::vector<std::int64_t> ys;
  for (const auto& r : rects) {
    ys.push_back(2 * r.y_lo);
    ys.push_back(2 * r.y_hi);
    ys.push_back(2 * r.y_lo + 1);
    ys.push_back(2 * r.y_hi + 1);
  }
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  auto eq = [&](const Key& a, const Key& b) { return !less(a, b) && !less(b, a); };
  auto covers_x = [&](const OpenRect<Key>& r, std::size_t sample) {
    const Key& k = line.keys[sample / 2];
    if (sample % 2 == 0) {
      const bool lo_ok = less(r.x_lo, k) || (r.left_closed && eq(r.x_lo, k));
      const bool hi_ok = less(k, r.x_hi) || (r.right_closed && eq(r.x_hi, k));
      return lo_ok && hi_ok;
    }
    const Key& next = line.keys[sample / 2 + 1];
    return !less(k, r.x_lo) && !less(r.x_hi, next);
  };
  auto covers_y = [](const OpenRect<Key>& r, std::int64_t y2) {
    const bool lo_ok = 2 * r.y_lo < y2 || (r.bottom_closed && 2 * r.y_lo == y2);
    const bool hi_ok = y2 < 2 * r.y_hi || (r.top_closed && 2 * r.y_hi == y2);
    return lo_ok && hi_ok;
  };

  std::int64_t best = 0;
  std::vector<const OpenRect<Key>*> column;
  for (std::size_t s = 0; s < line.leaf_count(); ++s) {
    column.clear();
    for (const auto& r : rects)
      if (covers_x(r, s)) column.push_back(&r);
    if (static_cast<std::int64_t>(column.size()) <= best) continue;
    for (auto y2 : ys) {
      std::int64_t c = 0;
      for (const auto* r : column) c += covers_y(*r, y2) ? 1 : 0;
      best = std::max(best, c);
    }
  }
  return best;
}

}  // namespace traprix
