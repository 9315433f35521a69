#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "traprix/error.hpp"
#include "traprix/geometry.hpp"
#include "traprix/scenarios.hpp"

namespace traprix {

// Scene files are line based. The first non-comment line is
//   bbox x0 y0 x1 y1
// and every further line holds one segment as four rationals x0 y0 x1 y1.
// Rationals are p/q or bare integers; '#' starts a comment.

namespace detail {

inline std::vector<std::string> tokens(std::string line) {
  if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(std::move(t));
  return out;
}

[[noreturn]] inline void fail_at(std::size_t line, const std::string& what) {
  throw error(errc::parse_error, "line " + std::to_string(line) + ": " + what);
}

inline std::vector<Rational> rationals(const std::vector<std::string>& toks, std::size_t from, std::size_t line) {
  std::vector<Rational> out;
  for (std::size_t i = from; i < toks.size(); ++i) {
    try {
      out.push_back(Rational::parse(toks[i]));
    } catch (const error& e) {
      fail_at(line, e.message());
    }
  }
  return out;
}

}  // namespace detail

/// Throws ValidationFailed naming the first offending segment (by index)
/// or the first crossing pair in (i, j) order.
inline void validate_scene(const Scene& scene) {
  const auto& segs = scene.segments;
  for (std::size_t i = 0; i < segs.size(); ++i)
    if (!scene.bbox.strictly_contains(segs[i].left()) || !scene.bbox.strictly_contains(segs[i].right()))
      throw error(errc::validation_failed, "segment " + std::to_string(i) + " is not strictly inside the bbox");

  std::vector<std::size_t> by_left(segs.size());
  std::iota(by_left.begin(), by_left.end(), 0);
  std::sort(by_left.begin(), by_left.end(), [&](auto a, auto b) { return segs[a].left().x < segs[b].left().x; });
  std::optional<std::pair<std::size_t, std::size_t>> first;
  for (std::size_t a = 0; a < by_left.size(); ++a) {
    const auto& s = segs[by_left[a]];
    for (std::size_t b = a + 1; b < by_left.size() && segs[by_left[b]].left().x <= s.right().x; ++b) {
      if (segments_interior_disjoint(s, segs[by_left[b]])) continue;
      const std::pair pair{std::min(by_left[a], by_left[b]), std::max(by_left[a], by_left[b])};
      if (!first || pair < *first) first = pair;
    }
  }
  if (first) {
    std::ostringstream msg;
    msg << "segments " << first->first << " " << segs[first->first] << " and " << first->second << " "
        << segs[first->second] << " cross";
    throw error(errc::validation_failed, msg.str());
  }
}

inline Scene parse_scene(std::istream& in) {
  Scene scene;
  bool have_bbox = false;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto toks = detail::tokens(line);
    if (toks.empty()) continue;
    if (!have_bbox) {
      if (toks.front() != "bbox" || toks.size() != 5) detail::fail_at(line_no, "expected 'bbox x0 y0 x1 y1'");
      const auto v = detail::rationals(toks, 1, line_no);
      try {
        scene.bbox = Box({v[0], v[1]}, {v[2], v[3]});
      } catch (const error& e) {
        detail::fail_at(line_no, e.message());
      }
      have_bbox = true;
      continue;
    }
    if (toks.size() != 4) detail::fail_at(line_no, "expected four rationals");
    const auto v = detail::rationals(toks, 0, line_no);
    try {
      scene.segments.emplace_back(Point{v[0], v[1]}, Point{v[2], v[3]});
    } catch (const error& e) {
      detail::fail_at(line_no, e.message());
    }
  }
  if (!have_bbox) detail::fail_at(line_no, "missing bbox line");
  validate_scene(scene);
  return scene;
}

inline void write_scene(const Scene& scene, std::ostream& out) {
  const auto& lo = scene.bbox.lower_left();
  const auto& hi = scene.bbox.upper_right();
  out << "bbox " << lo.x << ' ' << lo.y << ' ' << hi.x << ' ' << hi.y << '\n';
  for (const auto& s : scene.segments)
    out << s.left().x << ' ' << s.left().y << ' ' << s.right().x << ' ' << s.right().y << '\n';
}

inline Scene read_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::io_error, "cannot open " + path);
  return parse_scene(in);
}

inline void write_scene(const Scene& scene, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw error(errc::io_error, "cannot write " + path);
  write_scene(scene, out);
  if (!out.flush()) throw error(errc::io_error, "cannot write " + path);
}

/// One point per line, two rationals.
inline std::vector<Point> parse_points(std::istream& in) {
  std::vector<Point> out;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto toks = detail::tokens(line);
    if (toks.empty()) continue;
    if (toks.size() != 2) detail::fail_at(line_no, "expected two rationals");
    const auto v = detail::rationals(toks, 0, line_no);
    out.push_back({v[0], v[1]});
  }
  return out;
}

inline std::vector<Point> read_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::io_error, "cannot open " + path);
  return parse_points(in);
}

}  // namespace traprix
