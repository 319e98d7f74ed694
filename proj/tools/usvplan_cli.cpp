// usvplan: scenario generation, planning, benchmarking, missions and plots.
//
// Exit codes: 0 success, 2 planning failure (or incomplete mission),
// 1 usage or I/O error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "usvplan/bench/benchmark.hpp"
#include "usvplan/bench/generators.hpp"
#include "usvplan/bench/plots.hpp"
#include "usvplan/error.hpp"
#include "usvplan/fields/io.hpp"
#include "usvplan/optimizer/serialize.hpp"

namespace fs = std::filesystem;
using namespace usvplan;

namespace {

constexpr int kPlanningFailure = 2;
constexpr int kUsageError = 1;

struct Common {
  std::optional<std::uint64_t> seed;
  fs::path out = "out";
  double timeout = 0.0;
};

// A scenario argument is a JSON file or the name of a built-in scenario; the
// latter is generated into <out>/scenarios first.
bench::Scenario resolve_scenario(const std::string& arg, const Common& c) {
  bench::Scenario s;
  if (fs::exists(arg)) {
    s = bench::load_scenario(arg);
  } else {
    const auto spec = bench::parse_builtin(arg);
    const auto file = bench::write_generated(bench::generate(spec), c.out / "scenarios");
    s = bench::load_scenario(file);
  }
  if (c.seed) s.seed = *c.seed;
  if (c.timeout > 0.0) s.params.timeout_s = c.timeout;
  return s;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

void print_result(const optimizer::PlanResult& r) {
  std::printf("%s: length %.2f m, collision_free %s, min_clearance %.2f m, energy %.2f %%, %.1f ms\n",
              r.planner.c_str(), r.length, r.collision_free ? "yes" : "no", r.min_clearance,
              100.0 * r.mean_energy_rate, r.duration_ms);
}

int cmd_gen(const std::vector<std::string>& names, bool all, const Common& c) {
  std::vector<std::string> selected = names;
  if (selected.empty()) {
    for (const auto& n : bench::builtin_names()) {
      if (all || n.ends_with("-500")) selected.push_back(n);
    }
  }
  ensure_dir(c.out);
  for (const auto& n : selected) {
    const auto file = bench::write_generated(bench::generate(bench::parse_builtin(n)), c.out);
    std::printf("%s\n", file.string().c_str());
  }
  return 0;
}

int cmd_plan(const std::string& scenario, const std::string& planner, const Common& c) {
  bench::check_planner(planner);
  const auto s = resolve_scenario(scenario, c);
  const auto fields = bench::build_fields(s);
  const auto r = bench::run_planner(planner, s, fields, s.seed, c.timeout);
  ensure_dir(c.out);
  const auto stem = s.name + "_" + bench::file_tag(planner);
  optimizer::write_json(optimizer::to_json(r), c.out / (stem + ".json"));
  optimizer::write_path_csv(r.path, c.out / (stem + ".csv"));
  print_result(r);
  return r.collision_free ? 0 : kPlanningFailure;
}

int cmd_bench(const std::vector<std::string>& scenarios, const bench::BenchOptions& options,
              bool timing, bool plots, const Common& c) {
  std::vector<bench::Scenario> list;
  for (const auto& a : scenarios) list.push_back(resolve_scenario(a, c));
  const auto report = bench::run_benchmark(list, options);
  ensure_dir(c.out);
  optimizer::write_json(report.to_json(timing), c.out / "report.json");
  bench::write_text(report.csv(timing), c.out / "report.csv");
  if (plots) bench::emit_plots(report, list, c.out / "plots");
  int failures = 0;
  for (const auto& row : report.rows) {
    std::printf("%-28s %-10s ok %d/%zu  length %8.2f  energy %6.2f %%", row.scenario.c_str(),
                row.planner.c_str(), row.successes, row.runs.size(), row.length.mean,
                row.energy_rate_pct.mean);
    if (timing) std::printf("  time %9.2f ms", row.time_ms.mean);
    std::printf("\n");
    failures += row.failures;
  }
  std::printf("report: %s\n", (c.out / "report.json").string().c_str());
  return failures == 0 ? 0 : kPlanningFailure;
}

int cmd_mission(const std::string& scenario, const std::string& planner,
                const std::string& plan_file, double speed, const Common& c) {
  const auto s = resolve_scenario(scenario, c);
  const auto fields = bench::build_fields(s);
  optimizer::PlanResult r = plan_file.empty()
                                ? bench::run_planner(planner, s, fields, s.seed, c.timeout)
                                : optimizer::plan_from_json(optimizer::read_json(plan_file));
  sim::MissionParams mp;
  if (speed > 0.0) mp.speed_limit = speed;
  const auto* env = s.currents ? &fields->environment : nullptr;
  const auto log = sim::run_mission(bench::to_mission_path(r.path), sim::ControllerGains{}, env, mp);

  ensure_dir(c.out);
  const auto stem = s.name + "_" + bench::file_tag(r.planner) + "_mission";
  log.write_csv(c.out / (stem + ".csv"));
  bench::write_text(bench::mission_svg(log), c.out / (stem + "_series.svg"));
  std::vector<fields::Point2> traveled;
  for (const auto& x : log.samples) traveled.emplace_back(x.east, x.north);
  bench::write_text(bench::overlay_svg(fields->grid, env,
                                       {{"planned", optimizer::positions(r.path), "#d62728"},
                                        {"traveled", traveled, "#1f77b4"}},
                                       s.start, s.goal),
                    c.out / (stem + "_overlay.svg"));
  std::printf("mission %s: %.1f s, final offset %.2f m, cross-track mean %.3f m max %.3f m, "
              "mean |dpsi_d| %.3g rad/step\n",
              log.completed ? "completed" : "INCOMPLETE", log.samples.back().t,
              (log.final_position() - s.goal).norm(), log.mean_cross_track(),
              log.max_cross_track(), log.mean_heading_change());
  return log.completed ? 0 : kPlanningFailure;
}

int cmd_plot(const std::string& scenario, const std::string& plan_file, const Common& c) {
  const auto s = resolve_scenario(scenario, c);
  const auto r = optimizer::plan_from_json(optimizer::read_json(plan_file));
  auto grid = fields::load_pgm(s.map_file);
  std::optional<fields::EnvironmentField> env;
  if (s.currents) env = fields::synth_vortex_field(*s.currents, grid.geometry());
  ensure_dir(c.out);
  const auto stem = s.name + "_" + bench::file_tag(r.planner);
  bench::write_text(bench::overlay_svg(grid, env ? &*env : nullptr,
                                       {{r.planner, optimizer::positions(r.path), "#d62728"}},
                                       s.start, s.goal),
                    c.out / (stem + ".svg"));
  optimizer::write_path_csv(r.path, c.out / (stem + ".csv"));
  if (!r.replans.empty()) {
    bench::write_text(bench::replan_csv(r), c.out / (stem + "_replans.csv"));
    bench::write_text(bench::replan_svg(r), c.out / (stem + "_replans.svg"));
  }
  std::printf("plots written to %s\n", c.out.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"USV path planning: generate, plan, benchmark, simulate, plot"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "Override the scenario seed");
    sub->add_option("-o,--out", common.out, "Output directory")->capture_default_str();
    sub->add_option("--timeout", common.timeout, "Per-run timeout in seconds (default: scenario)");
  };

  std::vector<std::string> gen_names;
  bool gen_all = false;
  auto* gen = app.add_subcommand("gen-scenarios", "Write built-in maps and scenario files");
  gen->add_option("names", gen_names, "Built-in names (default: every 500 px scenario)");
  gen->add_flag("--all", gen_all, "Every resolution, not only 500 px");
  add_common(gen);

  std::string scenario;
  std::string planner = "mc-gpmp2*";
  auto* plan = app.add_subcommand("plan", "Run one planner on one scenario");
  plan->add_option("scenario", scenario, "Scenario JSON or built-in name")->required();
  plan->add_option("-p,--planner", planner, "mc-gpmp2*, gpmp2, astar, rrt* or fmm")->capture_default_str();
  add_common(plan);

  std::vector<std::string> bench_scenarios;
  bench::BenchOptions options;
  std::vector<std::string> bench_planners;
  bool serial = false, no_timing = false, plots = false;
  auto* bench_cmd = app.add_subcommand("bench", "Benchmark planners over scenarios");
  bench_cmd->add_option("scenarios", bench_scenarios, "Scenario JSON files or built-in names")->required();
  bench_cmd->add_option("-p,--planners", bench_planners, "Planners (default: all)");
  bench_cmd->add_option("-j,--jobs", options.jobs, "Worker threads, 0 = hardware count")->capture_default_str();
  bench_cmd->add_flag("--serial", serial, "Force one worker for clean timings");
  bench_cmd->add_option("--reps", options.repetitions, "Override repetitions per scenario");
  bench_cmd->add_flag("--no-timing", no_timing, "Leave timing columns out of the report");
  bench_cmd->add_flag("--plots", plots, "Write overlay SVG and path CSV per row");
  add_common(bench_cmd);

  std::string plan_file;
  double speed = 0.0;
  auto* mission = app.add_subcommand("mission", "Simulate the vessel tracking a planned path");
  mission->add_option("scenario", scenario, "Scenario JSON or built-in name")->required();
  mission->add_option("-p,--planner", planner, "Planner used when no --plan is given")->capture_default_str();
  mission->add_option("--plan", plan_file, "Plan JSON written by 'plan'");
  mission->add_option("--speed", speed, "Cruise speed cap, m/s");
  add_common(mission);

  auto* plot = app.add_subcommand("plot", "Render a saved plan over its scenario");
  plot->add_option("scenario", scenario, "Scenario JSON or built-in name")->required();
  plot->add_option("--plan", plan_file, "Plan JSON written by 'plan'")->required();
  add_common(plot);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*gen) return cmd_gen(gen_names, gen_all, common);
    if (*plan) return cmd_plan(scenario, planner, common);
    if (*bench_cmd) {
      if (!bench_planners.empty()) options.planners = bench_planners;
      if (serial) options.jobs = 1;
      options.timeout_s = common.timeout;
      return cmd_bench(bench_scenarios, options, !no_timing, plots, common);
    }
    if (*mission) return cmd_mission(scenario, planner, plan_file, speed, common);
    if (*plot) return cmd_plot(scenario, plan_file, common);
  } catch (const PlanningFailed& e) {
    std::cerr << "planning failed: " << e.what() << "\n";
    return kPlanningFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
