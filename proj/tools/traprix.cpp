#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "traprix.hpp"

using namespace traprix;

namespace {

struct BuildFlags {
  std::string verifier = "none";
  std::string order = "shuffled";
  BuildConfig cfg;

  void attach(CLI::App& app, bool with_verifier = true) {
    if (with_verifier)
      app.add_option("--verifier", verifier, "post-build check")
          ->check(CLI::IsMember({"none", "depth", "lqpl", "arrdepth"}))
          ->capture_default_str();
    app.add_option("--seed", cfg.seed, "random seed")->envname("TRAPRIX_SEED")->capture_default_str();
    app.add_option("--depth-c", cfg.depth_c, "bound constant c in c*log2(n+1)")->capture_default_str();
    app.add_option("--size-c", cfg.size_c, "rebuild when nodes > size-c * n")->capture_default_str();
    app.add_option("--max-rebuilds", cfg.max_rebuilds)->capture_default_str();
    app.add_option("--order", order, "insertion order of the first attempt")
        ->check(CLI::IsMember({"suggested", "shuffled"}))
        ->capture_default_str();
  }

  BuildConfig resolve() const {
    static const std::map<std::string, Verifier> verifiers{{"none", Verifier::none},
                                                          {"depth", Verifier::depth},
                                                          {"lqpl", Verifier::longest_path},
                                                          {"arrdepth", Verifier::arrangement_depth}};
    BuildConfig out = cfg;
    out.verifier = verifiers.at(verifier);
    out.order = order == "suggested" ? InsertionOrder::suggested : InsertionOrder::shuffled;
    return out;
  }
};

template <class F>
void with_output(const std::string& path, F&& write) {
  if (path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw error(errc::io_error, "cannot write " + path);
  write(out);
  if (!out.flush()) throw error(errc::io_error, "cannot write " + path);
}

int exit_code(errc code) {
  switch (code) {
    case errc::rebuild_limit_exceeded: return 3;
    case errc::io_error: return 4;
    case errc::generation_stalled: return 1;
    default: return 2;
  }
}

const char* where_name(const LocateResult& r) {
  if (r.is_face()) return "FACE";
  if (r.is_edge()) return "EDGE";
  return "VERTEX";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trapezoidal map search structures with verified query paths"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a scene file");
  std::string gen_kind;
  std::size_t gen_n = 0, gen_k = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out = "-";
  gen->add_option("kind", gen_kind)->required()->check(CLI::IsMember({"random", "sqrt", "recursive"}));
  gen->add_option("--n", gen_n, "segment count (random, recursive)");
  gen->add_option("--k", gen_k, "block count (sqrt)");
  gen->add_option("--seed", gen_seed)->envname("TRAPRIX_SEED");
  gen->add_option("--out", gen_out, "output path or -")->capture_default_str();

  // build
  auto* bld = app.add_subcommand("build", "build a scene and print one CSV row");
  std::string build_scene;
  bool build_timing = false;
  BuildFlags build_flags;
  bld->add_option("--scene", build_scene)->required();
  bld->add_flag("--timing", build_timing, "fill the ms column");
  build_flags.attach(*bld);

  // query
  auto* qry = app.add_subcommand("query", "locate query points");
  std::string query_scene, query_points;
  BuildFlags query_flags;
  qry->add_option("--scene", query_scene)->required();
  qry->add_option("--queries", query_points, "one point per line")->required();
  query_flags.attach(*qry);

  // ratio
  auto* rat = app.add_subcommand("ratio", "D/L experiment as CSV");
  std::string ratio_scenario = "random", ratio_scene, ratio_out = "-";
  std::vector<std::size_t> ratio_sizes;
  std::size_t ratio_repeats = 20;
  unsigned ratio_jobs = 1;
  bool ratio_timing = false;
  BuildFlags ratio_flags;
  rat->add_option("--scenario", ratio_scenario)
      ->check(CLI::IsMember({"random", "sqrt", "recursive"}))
      ->capture_default_str();
  rat->add_option("--n", ratio_sizes, "sizes (block count for sqrt)")->delimiter(',');
  rat->add_option("--scene", ratio_scene, "use a scene file instead of a generator");
  rat->add_option("--repeats", ratio_repeats)->capture_default_str();
  rat->add_option("--jobs", ratio_jobs)->capture_default_str();
  rat->add_flag("--timing", ratio_timing, "fill the ms column");
  rat->add_option("--out", ratio_out, "output path or -")->capture_default_str();
  ratio_flags.attach(*rat);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      Scene scene;
      if (gen_kind == "random") scene = gen_random_segments(gen_n, gen_seed);
      else if (gen_kind == "sqrt") scene = gen_sqrt_blocks(gen_k);
      else scene = gen_recursive_blocks(gen_n);
      with_output(gen_out, [&](std::ostream& out) { write_scene(scene, out); });
    } else if (*bld) {
      const auto scene = read_scene(build_scene);
      const auto row = measure(std::filesystem::path(build_scene).stem().string(), scene, build_flags.resolve(), build_timing);
      std::cout << csv_header << '\n' << to_csv(row) << '\n';
    } else if (*qry) {
      const auto scene = read_scene(query_scene);
      const auto points = read_points(query_points);
      const auto built = build(scene, query_flags.resolve());
      for (const auto& p : points) {
        try {
          const auto r = built.map.locate(p);
          std::cout << where_name(r) << ' ' << r.path_len << '\n';
        } catch (const error& e) {
          if (e.code() != errc::out_of_box) throw;
          std::cout << "OUT_OF_BOX\n";
        }
      }
    } else if (*rat) {
      RatioSpec spec;
      spec.config = ratio_flags.resolve();
      spec.repeats = ratio_repeats;
      spec.jobs = ratio_jobs;
      spec.timing = ratio_timing;
      spec.sizes = ratio_sizes;
      if (!ratio_scene.empty()) {
        spec.kind = ScenarioKind::file;
        spec.name = std::filesystem::path(ratio_scene).stem().string();
        spec.scene = read_scene(ratio_scene);
      } else {
        spec.name = ratio_scenario;
        spec.kind = ratio_scenario == "random" ? ScenarioKind::random
                    : ratio_scenario == "sqrt" ? ScenarioKind::sqrt
                                               : ScenarioKind::recursive;
        if (ratio_sizes.empty()) throw error(errc::validation_failed, "--n is required without --scene");
      }
      const auto report = run_ratio(spec);
      with_output(ratio_out, [&](std::ostream& out) { write_report(report, out); });
    }
  } catch (const error& e) {
    std::cerr << "traprix: " << e.what() << '\n';
    return exit_code(e.code());
  }
  return 0;
}
