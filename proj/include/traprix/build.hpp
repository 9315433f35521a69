#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "traprix/depth_verifier.hpp"
#include "traprix/error.hpp"
#include "traprix/path_verifier.hpp"
#include "traprix/random.hpp"
#include "traprix/scenarios.hpp"
#include "traprix/trapezoidal_map.hpp"

namespace traprix {

/// What is checked after a complete build.
enum class Verifier {
  none,
  depth,              // D
  longest_path,       // L from the path verifier
  arrangement_depth,  // max depth of all trapezoids ever created
};

enum class InsertionOrder {
  shuffled,
  suggested,  // scene order on the first attempt, shuffled on rebuilds
};

struct BuildConfig {
  Verifier verifier = Verifier::none;
  double size_c = 12;
  double depth_c = 6;
  std::size_t max_rebuilds = 32;
  std::uint64_t seed = 0;
  InsertionOrder order = InsertionOrder::shuffled;
};

enum class Outcome {
  accepted,
  too_large,
  too_deep,
  path_too_long,
  arrangement_too_deep,
};

struct Attempt {
  std::uint64_t seed = 0;
  DagStats stats;
  Outcome outcome = Outcome::accepted;
  std::optional<std::size_t> longest;
  std::optional<std::int64_t> arrangement_depth;
};

struct BuildResult {
  TrapezoidalMap map;
  std::vector<Attempt> attempts;

  std::size_t rebuilds() const { return attempts.size() - 1; }
};

/// depth_c * log2(n + 1)
inline double verifier_bound(const BuildConfig& cfg, std::size_t n) {
  return cfg.depth_c * std::log2(static_cast<double>(n) + 1);
}

namespace detail {

inline TrapezoidalMap insert_all(const Scene& scene, std::span<const std::size_t> order, std::uint64_t seed,
                                 double size_limit, bool& too_large) {
  TrapezoidalMap map(scene.bbox, seed);
  too_large = false;
  for (const auto i : order) {
    try {
      map.insert(scene.segments[i]);
    } catch (const error& e) {
      if (e.code() == errc::intersects_existing || e.code() == errc::duplicate_segment || e.code() == errc::out_of_box)
        throw error(errc::validation_failed, "segment " + std::to_string(i) + ": " + e.message());
      throw;
    }
    if (static_cast<double>(map.stats().node_count) > size_limit) {
      too_large = true;
      break;
    }
  }
  return map;
}

}  // namespace detail

/// Builds the search structure, starting over with a fresh order whenever
/// the size or the configured verifier bound is exceeded. Attempt k uses
/// seed derive_seed(cfg.seed, k).
inline BuildResult build(const Scene& scene, const BuildConfig& cfg = {}) {
  const std::size_t n = scene.segments.size();
  const double size_limit = n == 0 ? INFINITY : cfg.size_c * static_cast<double>(n);
  const double bound = verifier_bound(cfg, n);
  std::vector<Attempt> attempts;
  for (std::size_t k = 0;; ++k) {
    if (k > cfg.max_rebuilds)
      throw error(errc::rebuild_limit_exceeded, "no acceptable build after " + std::to_string(cfg.max_rebuilds) + " rebuilds");
    Attempt a;
    a.seed = derive_seed(cfg.seed, k);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    if (k > 0 || cfg.order == InsertionOrder::shuffled) {
      SplitMix64 rng(a.seed);
      shuffle(std::span<std::size_t>(order), rng);
    }
    bool too_large = false;
    auto map = detail::insert_all(scene, order, a.seed, size_limit, too_large);
    a.stats = map.stats();
    if (too_large) {
      a.outcome = Outcome::too_large;
    } else if (n > 0) {
      switch (cfg.verifier) {
        case Verifier::none:
          break;
        case Verifier::depth:
          if (a.stats.depth > bound) a.outcome = Outcome::too_deep;
          break;
        case Verifier::longest_path:
          a.longest = max_search_path_length(map).longest;
          if (static_cast<double>(*a.longest) > bound) a.outcome = Outcome::path_too_long;
          break;
        case Verifier::arrangement_depth: {
          const auto limit = bound < 0x1p62 ? static_cast<std::int64_t>(std::floor(bound)) : std::int64_t{1} << 62;
          const auto r = verify_arrangement_depth(map, limit);
          a.arrangement_depth = r.max_depth;
          if (!r.certified) a.outcome = Outcome::arrangement_too_deep;
          break;
        }
      }
    }
    attempts.push_back(a);
    if (a.outcome == Outcome::accepted) return BuildResult{std::move(map), std::move(attempts)};
  }
}

}  // namespace traprix
