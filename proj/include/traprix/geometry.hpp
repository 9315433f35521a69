#pragma once

#include <array>
#include <compare>
#include <ostream>
#include <utility>

#include "traprix/error.hpp"
#include "traprix/rational.hpp"

namespace traprix {

struct Point {
  Rational x;
  Rational y;

  friend bool operator==(const Point&, const Point&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Point& p) { return os << '(' << p.x << ", " << p.y << ')'; }
};

/// Lexicographic order: x first, covertical ties broken by y. Every
/// "left of / right of" decision in the library goes through this.
inline std::strong_ordering cmp_lex(const Point& p, const Point& q) {
  if (auto c = p.x <=> q.x; c != 0) return c;
  return p.y <=> q.y;
}

struct LexLess {
  bool operator()(const Point& p, const Point& q) const { return cmp_lex(p, q) < 0; }
};

enum class Orientation { cw = -1, collinear = 0, ccw = 1 };

/// Sign of det(q - p, r - p).
inline Orientation orientation(const Point& p, const Point& q, const Point& r) {
  const mpq_class det = (q.x.raw() - p.x.raw()) * (r.y.raw() - p.y.raw()) -
                        (q.y.raw() - p.y.raw()) * (r.x.raw() - p.x.raw());
  const int s = sgn(det);
  return s > 0 ? Orientation::ccw : s < 0 ? Orientation::cw : Orientation::collinear;
}

/// A non-vertical segment stored with `left` lexicographically before
/// `right`. Construction normalizes the endpoint order.
class Segment {
 public:
  Segment(Point a, Point b) {
    const auto c = cmp_lex(a, b);
    if (c == 0) throw error(errc::degenerate_segment, "segment endpoints coincide");
    if (a.x == b.x) throw error(errc::vertical_segment, "vertical segments are not accepted as input");
    if (c < 0) {
      left_ = std::move(a);
      right_ = std::move(b);
    } else {
      left_ = std::move(b);
      right_ = std::move(a);
    }
  }

  const Point& left() const { return left_; }
  const Point& right() const { return right_; }

  friend bool operator==(const Segment&, const Segment&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Segment& s) { return os << s.left_ << "-" << s.right_; }

 private:
  Point left_;
  Point right_;
};

enum class Side { below = -1, on = 0, above = 1 };

/// Vertical position of `p` relative to the line through `s`. Requires
/// `p.x` within the closed x-range of `s`.
inline Side point_vs_segment(const Point& p, const Segment& s) {
  if (p.x < s.left().x || s.right().x < p.x)
    throw error(errc::x_range_violation, "query x outside the segment's x-range");
  switch (orientation(s.left(), s.right(), p)) {
    case Orientation::ccw: return Side::above;
    case Orientation::cw: return Side::below;
    case Orientation::collinear: break;
  }
  return Side::on;
}

namespace detail {

// p collinear with s; is it inside the closed lexicographic range of s?
inline bool within_lex_range(const Point& p, const Segment& s) {
  return cmp_lex(s.left(), p) <= 0 && cmp_lex(p, s.right()) <= 0;
}

inline bool is_endpoint(const Point& p, const Segment& s) { return p == s.left() || p == s.right(); }

}  // namespace detail

/// True iff `a` and `b` intersect in nothing but common endpoints.
inline bool segments_interior_disjoint(const Segment& a, const Segment& b) {
  const auto o1 = orientation(a.left(), a.right(), b.left());
  const auto o2 = orientation(a.left(), a.right(), b.right());
  if (o1 == Orientation::collinear && o2 == Orientation::collinear) {
    const Point& lo = cmp_lex(a.left(), b.left()) < 0 ? b.left() : a.left();
    const Point& hi = cmp_lex(a.right(), b.right()) < 0 ? a.right() : b.right();
    const auto c = cmp_lex(lo, hi);
    if (c > 0) return true;
    if (c == 0) return a.right() == b.left() || b.right() == a.left();
    return false;
  }
  const auto o3 = orientation(b.left(), b.right(), a.left());
  const auto o4 = orientation(b.left(), b.right(), a.right());
  auto opposite = [](Orientation u, Orientation v) {
    return static_cast<int>(u) * static_cast<int>(v) < 0;
  };
  if (opposite(o1, o2) && opposite(o3, o4)) return false;

  // Remaining contacts are an endpoint of one lying on the other.
  auto touches_badly = [](Orientation o, const Point& p, const Segment& on, const Segment& owner) {
    if (o != Orientation::collinear || !detail::within_lex_range(p, on)) return false;
    return !(detail::is_endpoint(p, on) && detail::is_endpoint(p, owner));
  };
  if (touches_badly(o1, b.left(), a, b) || touches_badly(o2, b.right(), a, b)) return false;
  if (touches_badly(o3, a.left(), b, a) || touches_badly(o4, a.right(), b, a)) return false;
  return true;
}

/// Axis-parallel bounding frame with rational corners.
class Box {
 public:
  Box(Point lower_left, Point upper_right) : lo_(std::move(lower_left)), hi_(std::move(upper_right)) {
    if (!(lo_.x < hi_.x) || !(lo_.y < hi_.y)) throw error(errc::degenerate_box, "bounding box needs positive width and height");
  }

  const Point& lower_left() const { return lo_; }
  const Point& upper_right() const { return hi_; }

  bool strictly_contains(const Point& p) const { return lo_.x < p.x && p.x < hi_.x && lo_.y < p.y && p.y < hi_.y; }

  Segment bottom_wall() const { return Segment(lo_, Point{hi_.x, lo_.y}); }
  Segment top_wall() const { return Segment(Point{lo_.x, hi_.y}, hi_); }

  friend bool operator==(const Box&, const Box&) = default;

 private:
  Point lo_;
  Point hi_;
};

}  // namespace traprix
