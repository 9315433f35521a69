#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "traprix/error.hpp"
#include "traprix/geometry.hpp"

namespace traprix {

enum class PointId : std::uint32_t {};
enum class SegmentId : std::uint32_t {};
enum class TrapezoidId : std::uint32_t {};
enum class NodeId : std::uint32_t {};

template <class Id>
inline constexpr Id null_id = Id{std::numeric_limits<std::uint32_t>::max()};

template <class Id>
constexpr std::size_t index_of(Id id) noexcept {
  return static_cast<std::size_t>(id);
}

template <class Id>
constexpr bool is_null(Id id) noexcept {
  return id == null_id<Id>;
}

/// A trapezoid of the map. `leftp`/`rightp` are lexicographic wall keys, so
/// two covertical keys bound a zero-width (virtual) trapezoid. Killed
/// trapezoids stay in storage with `alive == false`; the storage therefore
/// doubles as the log of every trapezoid ever created.
struct Trapezoid {
  SegmentId top;
  SegmentId bottom;
  PointId leftp;
  PointId rightp;
  TrapezoidId upper_left = null_id<TrapezoidId>;
  TrapezoidId lower_left = null_id<TrapezoidId>;
  TrapezoidId upper_right = null_id<TrapezoidId>;
  TrapezoidId lower_right = null_id<TrapezoidId>;
  NodeId node = null_id<NodeId>;
  bool alive = true;
};

struct TrapezoidRecord {
  PointId left;
  PointId right;
  SegmentId top;
  SegmentId bottom;

  friend bool operator==(const TrapezoidRecord&, const TrapezoidRecord&) = default;
};

enum class NodeKind : std::uint8_t { x, y, leaf };

/// Search DAG node. For x-nodes `first`/`second` are the left/right
/// children, for y-nodes above/below. `depth` is the number of nodes on the
/// longest root path ending here (root = 1); internal nodes never change it.
struct DagNode {
  NodeKind kind = NodeKind::leaf;
  std::uint32_t item = 0;  // PointId, SegmentId or TrapezoidId by kind
  NodeId first = null_id<NodeId>;
  NodeId second = null_id<NodeId>;
  std::uint32_t depth = 0;

  PointId point() const { return PointId{item}; }
  SegmentId segment() const { return SegmentId{item}; }
  TrapezoidId trapezoid() const { return TrapezoidId{item}; }
};

struct LocateResult {
  std::variant<TrapezoidId, SegmentId, PointId> where;
  std::size_t path_len = 0;  // internal nodes visited

  bool is_face() const { return std::holds_alternative<TrapezoidId>(where); }
  bool is_edge() const { return std::holds_alternative<SegmentId>(where); }
  bool is_vertex() const { return std::holds_alternative<PointId>(where); }
};

struct InsertStats {
  std::size_t trapezoids_killed = 0;
  std::size_t trapezoids_created = 0;
  std::size_t merges = 0;
  std::uint32_t new_depth = 0;
};

struct DagStats {
  std::size_t n_segments = 0;
  std::size_t node_count = 0;
  std::size_t leaf_count = 0;
  std::uint32_t depth = 0;

  friend bool operator==(const DagStats&, const DagStats&) = default;
};

/// Trapezoidal map of interior-disjoint segments inside a bounding frame,
/// together with its history DAG.
///
/// Segment ids 0 and 1 are the frame's bottom and top walls; inserted
/// segments follow. Point ids 0 and 1 are the frame's lower-left and
/// upper-right corners, which serve as the outermost wall keys.
class TrapezoidalMap {
 public:
  static constexpr SegmentId bottom_wall = SegmentId{0};
  static constexpr SegmentId top_wall = SegmentId{1};
  static constexpr PointId frame_left = PointId{0};
  static constexpr PointId frame_right = PointId{1};

  explicit TrapezoidalMap(Box bbox, std::uint64_t seed = 0) : bbox_(std::move(bbox)), seed_(seed) {
    intern(bbox_.lower_left());
    intern(bbox_.upper_right());
    add_segment(bbox_.bottom_wall());
    add_segment(bbox_.top_wall());
    const auto frame = new_trapezoid(top_wall, bottom_wall, frame_left, frame_right);
    root_ = leaf_node(frame);
    nodes_[index_of(root_)].depth = 1;
    max_depth_ = 1;
  }

  const Box& bbox() const { return bbox_; }
  std::uint64_t seed() const { return seed_; }
  NodeId root() const { return root_; }

  const Point& point(PointId id) const { return points_[index_of(id)]; }
  const Segment& segment(SegmentId id) const { return segments_[index_of(id)]; }
  PointId left_id(SegmentId id) const { return segment_ends_[index_of(id)].first; }
  PointId right_id(SegmentId id) const { return segment_ends_[index_of(id)].second; }
  const Trapezoid& trapezoid(TrapezoidId id) const { return trapezoids_[index_of(id)]; }
  const DagNode& node(NodeId id) const { return nodes_[index_of(id)]; }

  std::span<const Point> points() const { return points_; }
  std::span<const Segment> segments() const { return segments_; }
  std::span<const DagNode> nodes() const { return nodes_; }
  /// Every trapezoid ever created, in creation order; index 0 is the frame.
  std::span<const Trapezoid> trapezoid_log() const { return trapezoids_; }

  TrapezoidRecord record(TrapezoidId id) const {
    const auto& t = trapezoid(id);
    return {t.leftp, t.rightp, t.top, t.bottom};
  }

  std::vector<TrapezoidRecord> log_records() const {
    std::vector<TrapezoidRecord> out;
    out.reserve(trapezoids_.size());
    for (const auto& t : trapezoids_) out.push_back({t.leftp, t.rightp, t.top, t.bottom});
    return out;
  }

  std::size_t segment_count() const { return segments_.size() - 2; }
  std::size_t leaf_count() const { return live_count_; }
  std::uint32_t depth() const { return max_depth_; }

  DagStats stats() const { return {segment_count(), nodes_.size(), live_count_, max_depth_}; }

  std::vector<TrapezoidId> live_trapezoids() const {
    std::vector<TrapezoidId> out;
    out.reserve(live_count_);
    for (std::size_t i = 0; i < trapezoids_.size(); ++i)
      if (trapezoids_[i].alive) out.push_back(TrapezoidId{static_cast<std::uint32_t>(i)});
    return out;
  }

  std::optional<PointId> find_point(const Point& p) const {
    if (auto it = point_ids_.find(p); it != point_ids_.end()) return it->second;
    return std::nullopt;
  }

  /// Root-to-leaf descent for a query strictly inside the frame.
  LocateResult locate(const Point& p) const {
    if (!bbox_.strictly_contains(p)) throw error(errc::out_of_box, "query point outside the open bounding box");
    LocateResult result{TrapezoidId{0}, 0};
    NodeId at = root_;
    for (;;) {
      const DagNode& n = node(at);
      if (n.kind == NodeKind::leaf) {
        result.where = n.trapezoid();
        return result;
      }
      ++result.path_len;
      if (n.kind == NodeKind::x) {
        const auto c = cmp_lex(p, point(n.point()));
        if (c == 0) {
          result.where = n.point();
          return result;
        }
        at = c < 0 ? n.first : n.second;
      } else {
        const Segment& s = segment(n.segment());
        switch (point_vs_segment(p, s)) {
          case Side::above: at = n.first; break;
          case Side::below: at = n.second; break;
          case Side::on:
            if (p == s.left()) result.where = left_id(n.segment());
            else if (p == s.right()) result.where = right_id(n.segment());
            else result.where = n.segment();
            return result;
        }
      }
    }
  }

  /// The live trapezoid that `s` enters immediately to the right of its
  /// left endpoint. Ties at shared endpoints are resolved by the direction
  /// of `s` itself.
  TrapezoidId locate_segment_start(const Segment& s) const {
    check_in_box(s);
    const Point& p = s.left();
    const Point& q = s.right();
    NodeId at = root_;
    for (;;) {
      const DagNode& n = node(at);
      switch (n.kind) {
        case NodeKind::leaf: return n.trapezoid();
        case NodeKind::x: at = cmp_lex(p, point(n.point())) < 0 ? n.first : n.second; break;
        case NodeKind::y: {
          const Segment& t = segment(n.segment());
          auto o = orientation(t.left(), t.right(), p);
          if (o == Orientation::collinear) {
            if (!detail::is_endpoint(p, t))
              throw error(errc::intersects_existing, "left endpoint lies on an existing segment");
            o = orientation(t.left(), t.right(), q);
            if (o == Orientation::collinear) {
              if (p == t.left() && q == t.right()) throw error(errc::duplicate_segment, "segment already inserted");
              if (p == t.left()) throw error(errc::intersects_existing, "segment overlaps an existing segment");
              throw std::logic_error("search reached a segment outside its x-range");
            }
          }
          at = o == Orientation::ccw ? n.first : n.second;
          break;
        }
      }
    }
  }

  /// Inserts `s`, re-tiling the trapezoids it crosses and extending the DAG.
  /// The map is unchanged if an error is thrown.
  InsertStats insert(const Segment& s) {
    check_in_box(s);
    {
      const auto pl = find_point(s.left());
      const auto pr = find_point(s.right());
      if (pl && pr && inserted_.contains({*pl, *pr})) throw error(errc::duplicate_segment, "segment already inserted");
    }

    // Walk left to right through the trapezoids crossed by s.
    std::vector<TrapezoidId> crossed;
    std::vector<Orientation> wall_side;  // side of s on which each crossed wall key lies
    crossed.push_back(locate_segment_start(s));
    check_contact(s, crossed.back());
    for (;;) {
      const Trapezoid& d = trapezoid(crossed.back());
      const Point& r = point(d.rightp);
      if (cmp_lex(s.right(), r) <= 0) break;
      const auto o = orientation(s.left(), s.right(), r);
      if (o == Orientation::collinear) throw error(errc::intersects_existing, "segment passes through an existing endpoint");
      const TrapezoidId next = o == Orientation::ccw ? d.lower_right : d.upper_right;
      if (is_null(next)) throw std::logic_error("missing neighbour while walking along a segment");
      wall_side.push_back(o);
      crossed.push_back(next);
      check_contact(s, next);
    }

    const PointId p = intern(s.left());
    const PointId q = intern(s.right());
    const SegmentId sid = add_segment(s);
    inserted_.insert({p, q});

    InsertStats stats;
    stats.trapezoids_killed = crossed.size();
    const std::size_t first_new = trapezoids_.size();
    const std::size_t k = crossed.size() - 1;

    TrapezoidId left_piece = null_id<TrapezoidId>;
    TrapezoidId right_piece = null_id<TrapezoidId>;
    {
      const Trapezoid first = trapezoid(crossed.front());
      const Trapezoid last = trapezoid(crossed.back());
      if (first.leftp != p) left_piece = new_trapezoid(first.top, first.bottom, first.leftp, p);
      if (last.rightp != q) right_piece = new_trapezoid(last.top, last.bottom, q, last.rightp);
    }

    std::vector<TrapezoidId> upper(k + 1), lower(k + 1);
    for (std::size_t j = 0; j <= k; ++j) {
      const Trapezoid d = trapezoid(crossed[j]);
      const PointId lp = j == 0 ? p : d.leftp;
      const PointId rp = j == k ? q : d.rightp;
      // A wall key below s no longer separates the pieces above s, and vice versa.
      if (j > 0 && wall_side[j - 1] == Orientation::cw) {
        upper[j] = upper[j - 1];
        if (trapezoids_[index_of(upper[j])].top != d.top) throw std::logic_error("merged pieces disagree on top");
        trapezoids_[index_of(upper[j])].rightp = rp;
        ++stats.merges;
      } else {
        upper[j] = new_trapezoid(d.top, sid, lp, rp);
      }
      if (j > 0 && wall_side[j - 1] == Orientation::ccw) {
        lower[j] = lower[j - 1];
        if (trapezoids_[index_of(lower[j])].bottom != d.bottom) throw std::logic_error("merged pieces disagree on bottom");
        trapezoids_[index_of(lower[j])].rightp = rp;
        ++stats.merges;
      } else {
        lower[j] = new_trapezoid(sid, d.bottom, lp, rp);
      }
    }
    stats.trapezoids_created = trapezoids_.size() - first_new;

    for (auto t : crossed) {
      trapezoids_[index_of(t)].alive = false;
      --live_count_;
    }
    relink(crossed, first_new);

    for (std::size_t j = 0; j <= k; ++j) {
      const NodeId n = trapezoid(crossed[j]).node;
      std::optional<std::pair<PointId, TrapezoidId>> split_left, split_right;
      if (j == 0 && !is_null(left_piece)) split_left = {{p, left_piece}};
      if (j == k && !is_null(right_piece)) split_right = {{q, right_piece}};
      expand_leaf(n, split_left, split_right, sid, upper[j], lower[j]);
    }
    stats.new_depth = max_depth_;
    return stats;
  }

  /// Longest root-to-leaf node count, recomputed from scratch.
  std::uint32_t recompute_depth() const {
    std::vector<std::uint32_t> indegree(nodes_.size(), 0);
    for (const auto& n : nodes_) {
      if (n.kind == NodeKind::leaf) continue;
      ++indegree[index_of(n.first)];
      ++indegree[index_of(n.second)];
    }
    std::vector<std::uint32_t> dist(nodes_.size(), 0);
    std::vector<NodeId> ready{root_};
    dist[index_of(root_)] = 1;
    std::uint32_t best = 0;
    while (!ready.empty()) {
      const NodeId at = ready.back();
      ready.pop_back();
      const auto& n = node(at);
      best = std::max(best, dist[index_of(at)]);
      if (n.kind == NodeKind::leaf) continue;
      for (NodeId c : {n.first, n.second}) {
        dist[index_of(c)] = std::max(dist[index_of(c)], dist[index_of(at)] + 1);
        if (--indegree[index_of(c)] == 0) ready.push_back(c);
      }
    }
    return best;
  }

 private:
  void check_in_box(const Segment& s) const {
    if (!bbox_.strictly_contains(s.left()) || !bbox_.strictly_contains(s.right()))
      throw error(errc::out_of_box, "segment endpoints must lie strictly inside the bounding box");
  }

  // s may touch the top or bottom of a crossed trapezoid only at shared endpoints.
  void check_contact(const Segment& s, TrapezoidId id) const {
    const Trapezoid& t = trapezoid(id);
    for (SegmentId b : {t.top, t.bottom}) {
      if (b == top_wall || b == bottom_wall) continue;
      if (!segments_interior_disjoint(s, segment(b)))
        throw error(errc::intersects_existing, "segment intersects an existing segment");
    }
  }

  PointId intern(const Point& p) {
    auto [it, fresh] = point_ids_.try_emplace(p, PointId{static_cast<std::uint32_t>(points_.size())});
    if (fresh) points_.push_back(p);
    return it->second;
  }

  SegmentId add_segment(const Segment& s) {
    const PointId l = intern(s.left());
    const PointId r = intern(s.right());
    segments_.push_back(s);
    segment_ends_.emplace_back(l, r);
    return SegmentId{static_cast<std::uint32_t>(segments_.size() - 1)};
  }

  TrapezoidId new_trapezoid(SegmentId top, SegmentId bottom, PointId leftp, PointId rightp) {
    Trapezoid t;
    t.top = top;
    t.bottom = bottom;
    t.leftp = leftp;
    t.rightp = rightp;
    trapezoids_.push_back(t);
    ++live_count_;
    return TrapezoidId{static_cast<std::uint32_t>(trapezoids_.size() - 1)};
  }

  NodeId new_node() {
    nodes_.emplace_back();
    return NodeId{static_cast<std::uint32_t>(nodes_.size() - 1)};
  }

  NodeId leaf_node(TrapezoidId t) {
    auto& slot = trapezoids_[index_of(t)].node;
    if (is_null(slot)) {
      const NodeId n = new_node();
      nodes_[index_of(n)].kind = NodeKind::leaf;
      nodes_[index_of(n)].item = static_cast<std::uint32_t>(t);
      trapezoids_[index_of(t)].node = n;
    }
    return trapezoids_[index_of(t)].node;
  }

  void attach(NodeId child, std::uint32_t parent_depth) {
    auto& d = nodes_[index_of(child)].depth;
    d = std::max(d, parent_depth + 1);
    max_depth_ = std::max(max_depth_, d);
  }

  void set_internal(NodeId at, NodeKind kind, std::uint32_t item, NodeId first, NodeId second) {
    auto& n = nodes_[index_of(at)];
    n.kind = kind;
    n.item = item;
    n.first = first;
    n.second = second;
  }

  // Turns the leaf `n` of a killed trapezoid into the root of its
  // replacement subgraph: [x(p)] -> [x(q)] -> y(s).
  void expand_leaf(NodeId n, std::optional<std::pair<PointId, TrapezoidId>> split_left,
                   std::optional<std::pair<PointId, TrapezoidId>> split_right, SegmentId s, TrapezoidId above,
                   TrapezoidId below) {
    NodeId slot = n;
    std::uint32_t depth = node(n).depth;
    if (split_left) {
      const NodeId outside = leaf_node(split_left->second);
      const NodeId rest = new_node();
      set_internal(slot, NodeKind::x, static_cast<std::uint32_t>(split_left->first), outside, rest);
      attach(outside, depth);
      attach(rest, depth);
      slot = rest;
      ++depth;
    }
    if (split_right) {
      const NodeId outside = leaf_node(split_right->second);
      const NodeId rest = new_node();
      set_internal(slot, NodeKind::x, static_cast<std::uint32_t>(split_right->first), rest, outside);
      attach(outside, depth);
      attach(rest, depth);
      slot = rest;
      ++depth;
    }
    const NodeId up = leaf_node(above);
    const NodeId down = leaf_node(below);
    set_internal(slot, NodeKind::y, static_cast<std::uint32_t>(s), up, down);
    attach(up, depth);
    attach(down, depth);
  }

  // Neighbour links of every new trapezoid, plus the links of surviving
  // neighbours that pointed into killed ones. Adjacent trapezoids across a
  // wall key share either their top or their bottom, which identifies them.
  void relink(const std::vector<TrapezoidId>& killed, std::size_t first_new) {
    std::vector<TrapezoidId> pool;
    for (std::size_t i = first_new; i < trapezoids_.size(); ++i) pool.push_back(TrapezoidId{static_cast<std::uint32_t>(i)});
    const std::size_t n_new = pool.size();
    for (auto kid : killed) {
      const Trapezoid& d = trapezoid(kid);
      for (auto nb : {d.upper_left, d.lower_left, d.upper_right, d.lower_right})
        if (!is_null(nb) && trapezoid(nb).alive && std::find(pool.begin(), pool.end(), nb) == pool.end()) pool.push_back(nb);
    }

    auto find = [&](auto pred) {
      for (auto id : pool)
        if (pred(trapezoid(id))) return id;
      throw std::logic_error("neighbour lookup failed");
    };
    auto upper_right = [&](const Trapezoid& t) {
      if (t.rightp == frame_right || right_id(t.top) == t.rightp) return null_id<TrapezoidId>;
      return find([&](const Trapezoid& u) { return u.leftp == t.rightp && u.top == t.top; });
    };
    auto lower_right = [&](const Trapezoid& t) {
      if (t.rightp == frame_right || right_id(t.bottom) == t.rightp) return null_id<TrapezoidId>;
      return find([&](const Trapezoid& u) { return u.leftp == t.rightp && u.bottom == t.bottom; });
    };
    auto upper_left = [&](const Trapezoid& t) {
      if (t.leftp == frame_left || left_id(t.top) == t.leftp) return null_id<TrapezoidId>;
      return find([&](const Trapezoid& u) { return u.rightp == t.leftp && u.top == t.top; });
    };
    auto lower_left = [&](const Trapezoid& t) {
      if (t.leftp == frame_left || left_id(t.bottom) == t.leftp) return null_id<TrapezoidId>;
      return find([&](const Trapezoid& u) { return u.rightp == t.leftp && u.bottom == t.bottom; });
    };
    auto dead = [&](TrapezoidId id) { return !is_null(id) && !trapezoid(id).alive; };

    for (std::size_t i = 0; i < pool.size(); ++i) {
      const TrapezoidId id = pool[i];
      Trapezoid t = trapezoid(id);
      const bool fresh = i < n_new;
      if (fresh || dead(t.upper_left)) t.upper_left = upper_left(t);
      if (fresh || dead(t.lower_left)) t.lower_left = lower_left(t);
      if (fresh || dead(t.upper_right)) t.upper_right = upper_right(t);
      if (fresh || dead(t.lower_right)) t.lower_right = lower_right(t);
      trapezoids_[index_of(id)] = t;
    }
  }

  Box bbox_;
  std::uint64_t seed_;
  std::vector<Point> points_;
  std::map<Point, PointId, LexLess> point_ids_;
  std::vector<Segment> segments_;
  std::vector<std::pair<PointId, PointId>> segment_ends_;
  std::set<std::pair<PointId, PointId>> inserted_;
  std::vector<Trapezoid> trapezoids_;
  std::vector<DagNode> nodes_;
  NodeId root_ = null_id<NodeId>;
  std::size_t live_count_ = 0;
  std::uint32_t max_depth_ = 0;
};

}  // namespace traprix
