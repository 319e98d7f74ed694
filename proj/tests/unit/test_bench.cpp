#include <gtest/gtest.h>

#include <expat.h>

#include <filesystem>
#include <fstream>
#include <queue>
#include <sstream>

#include "usvplan/bench/benchmark.hpp"
#include "usvplan/bench/generators.hpp"
#include "usvplan/bench/plots.hpp"
#include "usvplan/error.hpp"
#include "usvplan/fields/io.hpp"

using namespace usvplan;
using namespace usvplan::bench;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("usvplan_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

Scenario written(const BuiltinSpec& spec, const fs::path& dir) {
  return load_scenario(write_generated(generate(spec), dir));
}

bool well_formed_xml(const std::string& text) {
  XML_Parser p = XML_ParserCreate(nullptr);
  const bool ok = XML_Parse(p, text.data(), static_cast<int>(text.size()), 1) == XML_STATUS_OK;
  XML_ParserFree(p);
  return ok;
}

std::string slurp(const fs::path& f) {
  std::ifstream in(f);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 4-connected components of cells where `pick` holds; returns the label image.
template <class Pick>
int label_components(const fields::OccupancyGrid& g, Pick pick, std::vector<int>& label) {
  const int w = g.geometry().width, h = g.geometry().height;
  label.assign(static_cast<std::size_t>(w) * h, -1);
  int count = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (!pick(x, y) || label[y * w + x] >= 0) continue;
      std::queue<std::pair<int, int>> q;
      q.push({x, y});
      label[y * w + x] = count;
      while (!q.empty()) {
        const auto [cx, cy] = q.front();
        q.pop();
        const int dx[] = {1, -1, 0, 0}, dy[] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
          const int nx = cx + dx[k], ny = cy + dy[k];
          if (nx < 0 || ny < 0 || nx >= w || ny >= h || !pick(nx, ny) || label[ny * w + nx] >= 0) continue;
          label[ny * w + nx] = count;
          q.push({nx, ny});
        }
      }
      ++count;
    }
  return count;
}

}  // namespace

TEST(Scenario, JsonRoundTrip) {
  auto s = generate({5, true, 500}).scenario;
  s.seed = 77;
  s.repetitions = 3;
  const auto back = scenario_from_json(to_json(s));
  EXPECT_EQ(to_json(back).dump(), to_json(s).dump());
}

TEST(Scenario, SchemaErrorsAreReported) {
  auto j = to_json(generate({1, false, 500}).scenario);
  j.erase("start");
  EXPECT_THROW(scenario_from_json(j), InvalidInput);
  auto k = to_json(generate({1, false, 500}).scenario);
  k["repetitions"] = 0;
  EXPECT_THROW(validate(scenario_from_json(k)), InvalidInput);
}

TEST(Generators, EmptyProblemCarriesParameterRow) {
  const auto g = generate(parse_builtin("problem1-500"));
  EXPECT_EQ(g.grid.geometry().width, 500);
  EXPECT_EQ(g.grid.geometry().height, 500);
  for (int y = 0; y < 500; ++y)
    for (int x = 0; x < 500; ++x) ASSERT_FALSE(g.grid.occupied(x, y));
  EXPECT_EQ(g.scenario.params.segments, 5);
  EXPECT_DOUBLE_EQ(g.scenario.params.t_max, 2.0);
}

TEST(Generators, UnknownNameListsOptions) {
  try {
    parse_builtin("problem9");
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("problem<1-5>[-currents]-<500|1000|2000>"), std::string::npos);
  }
  EXPECT_EQ(builtin_names().size(), 30u);
}

TEST(Generators, NarrowPassageHasOneCorridor) {
  const fs::path dir = scratch_dir("corridor");
  const auto s = written({4, false, 500}, dir);
  const auto grid = fields::load_pgm(s.map_file);
  const int w = grid.geometry().width, h = grid.geometry().height;

  std::vector<int> label;
  const int masses = label_components(grid, [&](int x, int y) { return grid.occupied(x, y); }, label);
  EXPECT_EQ(masses, 2);

  // Columns spanned by obstacles; the free cells inside that band are the passages.
  int x0 = w, x1 = -1;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (grid.occupied(x, y)) x0 = std::min(x0, x), x1 = std::max(x1, x);
  ASSERT_LE(x0, x1);
  const int passages = label_components(
      grid, [&](int x, int y) { return x >= x0 && x <= x1 && !grid.occupied(x, y); }, label);
  EXPECT_EQ(passages, 1);

  int widest = 0;
  for (int x = x0; x <= x1; ++x) {
    int run = 0;
    for (int y = 0; y < h; ++y) run += grid.occupied(x, y) ? 0 : 1;
    widest = std::max(widest, run);
  }
  EXPECT_GT(widest, 0);
  EXPECT_LT(widest * grid.geometry().cell_size, 4 * s.params.epsilon);
}

TEST(Generators, CurrentsVariantDiffersOnlyInVortices) {
  const auto a = generate({1, false, 500});
  const auto b = generate({1, true, 500});
  EXPECT_EQ(a.grid.cells(), b.grid.cells());
  auto ja = to_json(a.scenario), jb = to_json(b.scenario);
  EXPECT_FALSE(ja.contains("currents") && !ja["currents"].is_null());
  EXPECT_TRUE(jb.contains("currents"));
  ja.erase("currents");
  jb.erase("currents");
  ja.erase("name");
  jb.erase("name");
  ja.erase("map");
  jb.erase("map");
  EXPECT_EQ(ja.dump(), jb.dump());
}

TEST(Benchmark, DeterministicPlannerHasNoSpread) {
  const auto s = written({2, false, 500}, scratch_dir("spread"));
  BenchOptions o;
  o.planners = {"gpmp2", "astar"};
  const auto r = run_benchmark({s}, o);
  for (const auto& row : r.rows) {
    ASSERT_EQ(row.successes, 5);
    EXPECT_EQ(row.length.min, row.length.max);
    EXPECT_DOUBLE_EQ(row.length.mean, row.length.min);
    EXPECT_LE(row.time_ms.min, row.time_ms.mean);
    EXPECT_LE(row.time_ms.mean, row.time_ms.max);
  }
}

TEST(Benchmark, EmptyMapAllSucceedAndOptimizerIsShortest) {
  const auto s = written({1, false, 500}, scratch_dir("empty"));
  const auto r = run_benchmark({s});
  ASSERT_EQ(r.rows.size(), planner_names().size());
  for (const auto& row : r.rows) EXPECT_TRUE(row.success()) << row.planner;
  EXPECT_LE(r.find(s.name, "mc-gpmp2*")->length.mean, r.find(s.name, "rrt*")->length.mean);
}

TEST(Benchmark, RowCountIsPlannersTimesScenarios) {
  const fs::path dir = scratch_dir("rows");
  std::vector<Scenario> ss{written({1, false, 500}, dir), written({2, true, 500}, dir),
                           written({3, false, 500}, dir)};
  BenchOptions o;
  o.planners = {"astar", "gpmp2"};
  o.repetitions = 1;
  o.jobs = 3;
  const auto r = run_benchmark(ss, o);
  EXPECT_EQ(r.rows.size(), 6u);
  EXPECT_EQ(r.fields.size(), 3u);
  EXPECT_EQ(r.to_json(false)["rows"].size(), 6u);
}

TEST(Benchmark, ReportIgnoresWorkerCount) {
  const fs::path dir = scratch_dir("det");
  std::vector<Scenario> ss{written({2, false, 500}, dir), written({5, false, 500}, dir)};
  BenchOptions serial;
  serial.repetitions = 2;
  BenchOptions parallel = serial;
  parallel.jobs = 4;
  const auto a = run_benchmark(ss, serial).to_json(false).dump();
  const auto b = run_benchmark(ss, serial).to_json(false).dump();
  const auto c = run_benchmark(ss, parallel).to_json(false).dump();
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_EQ(a.find("time_ms"), std::string::npos);
}

TEST(Benchmark, BadScenarioAbortsBeforeRunning) {
  const fs::path dir = scratch_dir("bad");
  auto good = written({1, false, 500}, dir);
  auto bad = good;
  bad.name = "blocked";
  bad.map_file = dir / "missing.pgm";
  try {
    run_benchmark({good, bad});
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("blocked"), std::string::npos);
  }
  auto unknown = BenchOptions{};
  unknown.planners = {"dijkstra"};
  EXPECT_THROW(run_benchmark({good}, unknown), InvalidInput);
}

TEST(Benchmark, FailuresAreCountedNotAveraged) {
  const auto s = written({4, true, 500}, scratch_dir("fail"));
  BenchOptions o;
  o.planners = {"fmm", "astar"};
  o.repetitions = 2;
  const auto r = run_benchmark({s}, o);
  const auto* fmm = r.find(s.name, "fmm");
  ASSERT_NE(fmm, nullptr);
  EXPECT_EQ(fmm->failures, 2);
  EXPECT_FALSE(fmm->success());
  EXPECT_EQ(fmm->length.mean, 0.0);
  EXPECT_FALSE(fmm->runs[0].failure.empty());
  EXPECT_TRUE(r.find(s.name, "astar")->success());
}

TEST(Plots, OneScenarioOnePlannerGivesOneOverlayAndOneCsv) {
  const fs::path dir = scratch_dir("plots");
  const auto s = written({2, true, 500}, dir);
  BenchOptions o;
  o.planners = {"mc-gpmp2*"};
  o.repetitions = 1;
  const auto r = run_benchmark({s}, o);
  const fs::path out = dir / "out";
  const auto files = emit_plots(r, {s}, out);
  int svg = 0, csv = 0;
  for (const auto& f : fs::directory_iterator(out)) {
    if (f.path().extension() == ".svg") {
      ++svg;
      EXPECT_TRUE(well_formed_xml(slurp(f.path()))) << f.path();
    }
    if (f.path().extension() == ".csv") ++csv;
  }
  EXPECT_EQ(svg, 1);
  EXPECT_EQ(csv, 1);
  EXPECT_EQ(files.size(), 2u);
}

TEST(Plots, OtherSvgsAreWellFormed) {
  const auto g = generate({5, true, 500});
  const auto f = build_fields(g.scenario, g.grid);
  const auto r = run_planner("mc-gpmp2*", g.scenario, f, 3);
  EXPECT_TRUE(well_formed_xml(replan_svg(r)));
  EXPECT_TRUE(well_formed_xml(overlay_svg(g.grid, &f->environment, {{"p", optimizer::positions(r.path), "#c00"}},
                                          g.scenario.start, g.scenario.goal)));
  const auto log = sim::run_mission(to_mission_path(r.path), sim::ControllerGains{}, &f->environment);
  EXPECT_TRUE(well_formed_xml(mission_svg(log)));
  EXPECT_FALSE(well_formed_xml("<svg><g></svg>"));
}

TEST(Plots, ReplanCsvMatchesDiagnostics) {
  const auto g = generate({5, false, 500});
  const auto f = build_fields(g.scenario, g.grid);
  const auto r = run_planner("mc-gpmp2*", g.scenario, f, 2);
  std::istringstream in(replan_csv(r));
  std::string line;
  std::getline(in, line);
  std::size_t i = 0;
  while (std::getline(in, line)) {
    ASSERT_LT(i, r.replans.size());
    const auto& d = r.replans[i++];
    std::vector<std::string> cell;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cell.push_back(c);
    if (!line.empty() && line.back() == ',') cell.push_back("");
    ASSERT_EQ(cell.size(), 9u) << line;
    EXPECT_EQ(std::stoi(cell[0]), d.iteration);
    EXPECT_EQ(std::stod(cell[1]), d.length);
    EXPECT_EQ(std::stod(cell[2]), d.objective);
    EXPECT_EQ(cell[3] == "1", d.collision_free);
    EXPECT_EQ(std::stod(cell[4]), d.min_clearance);
    EXPECT_EQ(cell[5] == "1", d.accepted);
    EXPECT_EQ(std::stoi(cell[6]), d.lm_iterations);
    std::vector<int> counts;
    std::stringstream cs(cell[7]);
    for (std::string c; std::getline(cs, c, ';');) counts.push_back(std::stoi(c));
    EXPECT_EQ(counts, d.interpolation_counts);
  }
  EXPECT_EQ(i, r.replans.size());
  EXPECT_EQ(i, static_cast<std::size_t>(g.scenario.replans));
}

TEST(Plots, UnwritableDirectoryIsIoError) {
  const fs::path dir = scratch_dir("ro");
  const auto s = written({1, false, 500}, dir);
  BenchOptions o;
  o.planners = {"astar"};
  o.repetitions = 1;
  const auto r = run_benchmark({s}, o);
  std::ofstream(dir / "file") << "x";
  EXPECT_THROW(emit_plots(r, {s}, dir / "file" / "sub"), IoError);
}

TEST(MissionPath, ThinningKeepsEndsAndSpacing) {
  const auto g = generate({3, false, 500});
  const auto r = run_planner("mc-gpmp2*", g.scenario, build_fields(g.scenario, g.grid), 1);
  const auto m = to_mission_path(r.path, 5.0);
  ASSERT_GE(m.waypoints.size(), 2u);
  EXPECT_EQ(m.waypoints.size(), m.times.size());
  EXPECT_EQ(m.waypoints.front(), optimizer::positions(r.path).front());
  EXPECT_EQ(m.waypoints.back(), optimizer::positions(r.path).back());
  for (std::size_t i = 1; i + 1 < m.waypoints.size(); ++i)
    EXPECT_GE((m.waypoints[i] - m.waypoints[i - 1]).norm(), 5.0 - 1e-9);
}
