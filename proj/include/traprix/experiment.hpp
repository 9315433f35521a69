#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "traprix/build.hpp"
#include "traprix/depth_verifier.hpp"
#include "traprix/path_verifier.hpp"
#include "traprix/scenarios.hpp"

namespace traprix {

inline constexpr std::string_view csv_header = "scenario,n,seed,D,L,ratio,nodes,paths,arrdepth,rebuilds,ms";

struct ExperimentRow {
  std::string scenario;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::uint32_t depth = 0;
  std::size_t longest = 0;
  std::size_t nodes = 0;
  std::uint64_t paths = 0;
  std::int64_t arrangement_depth = 0;
  std::size_t rebuilds = 0;
  std::optional<double> ms;

  /// D / L, with L = 0 counted as 1 so that the empty map gives 1.
  double ratio() const { return static_cast<double>(depth) / static_cast<double>(std::max<std::size_t>(longest, 1)); }

  friend bool operator==(const ExperimentRow&, const ExperimentRow&) = default;
};

namespace detail {

inline std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace detail

inline std::string to_csv(const ExperimentRow& r) {
  std::ostringstream out;
  out << r.scenario << ',' << r.n << ',' << r.seed << ',' << r.depth << ',' << r.longest << ','
      << detail::fixed(r.ratio(), 6) << ',' << r.nodes << ',' << r.paths << ',' << r.arrangement_depth << ','
      << r.rebuilds << ',' << (r.ms ? detail::fixed(*r.ms, 3) : "");
  return out.str();
}

inline ExperimentRow parse_csv_row(std::string_view line) {
  std::vector<std::string> f;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      f.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  f.push_back(cur);
  if (f.size() != 11) throw error(errc::parse_error, "expected 11 fields, got " + std::to_string(f.size()));
  try {
    ExperimentRow r;
    r.scenario = f[0];
    r.n = std::stoull(f[1]);
    r.seed = std::stoull(f[2]);
    r.depth = static_cast<std::uint32_t>(std::stoul(f[3]));
    r.longest = std::stoull(f[4]);
    r.nodes = std::stoull(f[6]);
    r.paths = std::stoull(f[7]);
    r.arrangement_depth = std::stoll(f[8]);
    r.rebuilds = std::stoull(f[9]);
    if (!f[10].empty()) r.ms = std::stod(f[10]);
    if (std::abs(std::stod(f[5]) - r.ratio()) > 1e-6) throw error(errc::parse_error, "ratio column disagrees with D/L");
    return r;
  } catch (const std::logic_error& e) {
    throw error(errc::parse_error, std::string("bad field: ") + e.what());
  }
}

/// Throws ValidationFailed unless L <= D and L <= 3 * arrdepth.
inline void check_row(const ExperimentRow& r) {
  if (r.longest > r.depth) throw error(errc::validation_failed, "row has L > D: " + to_csv(r));
  if (static_cast<std::int64_t>(r.longest) > 3 * r.arrangement_depth)
    throw error(errc::validation_failed, "row has L > 3 * arrdepth: " + to_csv(r));
}

/// Builds `scene` under `cfg` and measures the accepted DAG.
inline ExperimentRow measure(const std::string& scenario, const Scene& scene, const BuildConfig& cfg, bool timing = false) {
  const auto start = std::chrono::steady_clock::now();
  const auto built = build(scene, cfg);
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  const auto stats = built.map.stats();
  const auto paths = max_search_path_length(built.map);
  ExperimentRow row;
  row.scenario = scenario;
  row.n = scene.segments.size();
  row.seed = cfg.seed;
  row.depth = stats.depth;
  row.longest = paths.longest;
  row.nodes = stats.node_count;
  row.paths = paths.feasible_paths;
  row.arrangement_depth = verify_arrangement_depth(built.map, 0).max_depth;
  row.rebuilds = built.rebuilds();
  if (timing) row.ms = elapsed;
  check_row(row);
  return row;
}

enum class ScenarioKind { random, sqrt, recursive, file };

/// For `sqrt` a size is the block count k; otherwise it is the segment count.
/// A `file` scenario ignores sizes and uses `scene`.
struct RatioSpec {
  ScenarioKind kind = ScenarioKind::random;
  std::string name = "random";
  std::vector<std::size_t> sizes;
  std::optional<Scene> scene;
  std::size_t repeats = 1;
  BuildConfig config;
  bool timing = false;
  unsigned jobs = 1;
};

struct RatioSummary {
  std::string scenario;
  std::size_t n = 0;
  std::size_t count = 0;
  double mean = 0, min = 0, max = 0;
};

struct RatioReport {
  std::vector<ExperimentRow> rows;
  std::vector<RatioSummary> summaries;
};

/// Seed of the scene generated for `size`.
inline std::uint64_t scene_seed(std::uint64_t seed, std::size_t size) { return derive_seed(seed, size); }

/// Seed of repeat `r` on the scene generated for `size`.
inline std::uint64_t repeat_seed(std::uint64_t seed, std::size_t size, std::size_t r) {
  return derive_seed(scene_seed(seed, size), r + 1);
}

inline Scene make_scene(const RatioSpec& spec, std::size_t size) {
  switch (spec.kind) {
    case ScenarioKind::random: return gen_random_segments(size, scene_seed(spec.config.seed, size));
    case ScenarioKind::sqrt: return gen_sqrt_blocks(size);
    case ScenarioKind::recursive: return gen_recursive_blocks(size);
    case ScenarioKind::file: break;
  }
  if (!spec.scene) throw error(errc::validation_failed, "file scenario without a scene");
  return *spec.scene;
}

/// Every repeat rebuilds the same scene under a different insertion seed.
/// Rows come out in (size, repeat) order whatever the number of jobs.
inline RatioReport run_ratio(const RatioSpec& spec) {
  std::vector<std::size_t> sizes = spec.sizes;
  if (spec.kind == ScenarioKind::file) sizes = {spec.scene ? spec.scene->segments.size() : 0};

  std::vector<Scene> scenes;
  for (auto s : sizes) scenes.push_back(make_scene(spec, s));

  const std::size_t total = sizes.size() * spec.repeats;
  std::vector<ExperimentRow> rows(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < total;) {
      const std::size_t i = t / spec.repeats, r = t % spec.repeats;
      BuildConfig cfg = spec.config;
      cfg.seed = repeat_seed(spec.config.seed, sizes[i], r);
      try {
        rows[t] = measure(spec.name, scenes[i], cfg, spec.timing);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = total;
      }
    }
  };
  const unsigned jobs = std::max(1u, spec.jobs);
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  RatioReport report;
  report.rows = std::move(rows);
  for (std::size_t i = 0; i < sizes.size() && spec.repeats > 0; ++i) {
    RatioSummary s{spec.name, scenes[i].segments.size(), spec.repeats, 0, INFINITY, 0};
    for (std::size_t r = 0; r < spec.repeats; ++r) {
      const double q = report.rows[i * spec.repeats + r].ratio();
      s.mean += q;
      s.min = std::min(s.min, q);
      s.max = std::max(s.max, q);
    }
    s.mean /= static_cast<double>(spec.repeats);
    report.summaries.push_back(s);
  }
  return report;
}

inline std::string summary_line(const RatioSummary& s) {
  return "# summary scenario=" + s.scenario + " n=" + std::to_string(s.n) + " repeats=" + std::to_string(s.count) +
         " mean=" + detail::fixed(s.mean, 6) + " min=" + detail::fixed(s.min, 6) + " max=" + detail::fixed(s.max, 6);
}

/// Header, one row per build, then one '#' summary line per size.
inline void write_report(const RatioReport& report, std::ostream& out) {
  out << csv_header << '\n';
  for (const auto& r : report.rows) out << to_csv(r) << '\n';
  for (const auto& s : report.summaries) out << summary_line(s) << '\n';
}

}  // namespace traprix
