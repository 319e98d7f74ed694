#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "scenes.hpp"
#include "usvplan/baselines/astar.hpp"
#include "usvplan/baselines/common.hpp"
#include "usvplan/baselines/fmm.hpp"
#include "usvplan/baselines/rrt_star.hpp"
#include "usvplan/bench/benchmark.hpp"
#include "usvplan/bench/generators.hpp"
#include "usvplan/error.hpp"

using namespace usvplan;
using namespace usvplan::baselines;
using fields::Point2;

namespace {

const bench::GeneratedScenario& problem(int k, bool currents) {
  static std::map<std::pair<int, bool>, bench::GeneratedScenario> cache;
  auto it = cache.find({k, currents});
  if (it == cache.end()) it = cache.emplace(std::pair{k, currents}, bench::generate({k, currents, 500})).first;
  return it->second;
}

std::shared_ptr<const graph::PlanningFields> fields_of(int k, bool currents) {
  static std::map<std::pair<int, bool>, std::shared_ptr<const graph::PlanningFields>> cache;
  auto& f = cache[{k, currents}];
  if (!f) f = bench::build_fields(problem(k, currents).scenario, problem(k, currents).grid);
  return f;
}

fields::OccupancyGrid ring_around(Point2 c, double r_in, double r_out) {
  fields::OccupancyGrid g(fields::GridGeometry{100, 100, 1.0, Point2::Zero()});
  for (int y = 0; y < 100; ++y)
    for (int x = 0; x < 100; ++x) {
      const double d = (Point2(x, y) - c).norm();
      if (d >= r_in && d <= r_out) g.set(x, y, true);
    }
  return g;
}

}  // namespace

TEST(AStar, AxisAlignedEmptyMapIsExact) {
  const auto f = scenes::fields(scenes::disc_map(200, {0, 0}, -1));
  const auto r = astar_plan(f->sdf, {20, 50}, {180, 50}, GridSearchParams{});
  EXPECT_DOUBLE_EQ(optimizer::path_length(r.path), 160.0);
}

TEST(AStar, EnclosedGoalHasNoPath) {
  const auto f = scenes::fields(ring_around({70, 70}, 12, 16));
  try {
    astar_plan(f->sdf, {10, 10}, {70, 70}, GridSearchParams{1.0, 1.0, 30.0});
    FAIL() << "expected no-path";
  } catch (const PlanningFailed& e) {
    EXPECT_EQ(e.reason(), "no-path");
  }
}

TEST(AStar, MatchesDijkstraAtUnitStep) {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto grid = oracle::random_grid(64, 64, 0.25, rng);
    const auto f = scenes::fields(grid);
    auto free_cell = [&] {
      for (;;) {
        const int x = static_cast<int>(rng() % 64), y = static_cast<int>(rng() % 64);
        if (!grid.occupied(x, y)) return std::pair{x, y};
      }
    };
    const auto [sx, sy] = free_cell();
    const auto [gx, gy] = free_cell();
    if (sx == gx && sy == gy) continue;
    const double clearance = 0.5;
    auto node_ok = [&](int x, int y) { return f->sdf.value(Point2(x, y)) > clearance; };
    auto edge_ok = [&](int ax, int ay, int bx, int by) {
      const Point2 a(ax, ay), b(bx, by);
      const int n = static_cast<int>(std::ceil((b - a).norm() / 0.5));
      for (int k = 0; k <= n; ++k)
        if (!(f->sdf.value(a + (b - a) * (double(k) / n)) > clearance)) return false;
      return true;
    };
    const double expect = oracle::lattice_dijkstra(64, 64, sx, sy, gx, gy, node_ok, edge_ok);
    const GridSearchParams p{1.0, clearance, 30.0};
    if (std::isinf(expect)) {
      EXPECT_THROW(astar_plan(f->sdf, Point2(sx, sy), Point2(gx, gy), p), PlanningFailed);
    } else {
      const auto r = astar_plan(f->sdf, Point2(sx, sy), Point2(gx, gy), p);
      EXPECT_NEAR(optimizer::path_length(r.path), expect, 1e-9) << "trial " << trial;
    }
  }
}

TEST(RrtStar, EmptyMapRespectsEuclideanBound) {
  const auto f = scenes::fields(scenes::disc_map(300, {0, 0}, -1));
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto r = rrt_star_plan(f->sdf, {20, 20}, {270, 250}, RrtStarParams{}, seed);
    EXPECT_GE(optimizer::path_length(r.path), (Point2(270, 250) - Point2(20, 20)).norm() - 1e-9);
  }
}

TEST(RrtStar, PathsAreCollisionFreeAndSeeded) {
  const auto& s = problem(3, false).scenario;
  const auto f = fields_of(3, false);
  const auto a = rrt_star_plan(f->sdf, s.start, s.goal, RrtStarParams{}, 4);
  const auto b = rrt_star_plan(f->sdf, s.start, s.goal, RrtStarParams{}, 4);
  EXPECT_EQ(a.path, b.path);
  const auto res = polyline_result("rrt*", a.path, *f, s.params.body_radius, s.params.t_max, 0);
  EXPECT_TRUE(res.collision_free);
  EXPECT_GT(res.min_clearance, 0.0);
}

TEST(RrtStar, LongerThanMcGpmpOnMultiObstacleScenario) {
  const auto& s = problem(3, false).scenario;
  const auto f = fields_of(3, false);
  double rrt = 0.0, mc = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    rrt += bench::run_planner("rrt*", s, f, seed).length / 10.0;
    mc += bench::run_planner("mc-gpmp2*", s, f, seed).length / 10.0;
  }
  EXPECT_GT(rrt, mc);
}

TEST(RrtStar, MoreSamplesNoLongerInMedian) {
  const auto& s = problem(2, false).scenario;
  const auto f = fields_of(2, false);
  auto median = [&](int budget) {
    std::vector<double> len;
    for (std::uint64_t seed = 1; seed <= 21; ++seed) {
      RrtStarParams p;
      p.stop_at_first_solution = false;
      p.max_samples = budget;
      len.push_back(optimizer::path_length(rrt_star_plan(f->sdf, s.start, s.goal, p, seed).path));
    }
    std::nth_element(len.begin(), len.begin() + 10, len.end());
    return len[10];
  };
  EXPECT_LE(median(4000), median(1000));
}

TEST(RrtStar, ExhaustedBudgetFails) {
  const auto f = scenes::fields(ring_around({70, 70}, 12, 16));
  RrtStarParams p;
  p.max_samples = 500;
  p.inflation = 1.0;
  try {
    rrt_star_plan(f->sdf, {10, 10}, {70, 70}, p, 1);
    FAIL() << "expected failure";
  } catch (const PlanningFailed& e) {
    EXPECT_EQ(e.reason(), "budget-exhausted");
  }
}

TEST(Fmm, EmptyMapNearlyStraight) {
  const auto f = scenes::fields(scenes::disc_map(300, {0, 0}, -1));
  const Point2 a(20, 30), b(270, 200);
  const auto r = fmm_plan(f->sdf, f->environment, a, b, FmmParams{});
  EXPECT_LE(optimizer::path_length(r.path), 1.02 * (b - a).norm());
  EXPECT_LE((r.path.front() - a).norm(), 1e-9);
  EXPECT_LE((r.path.back() - b).norm(), 1e-9);
}

TEST(Fmm, AvoidsEnergyOnVortexScenario) {
  const auto& s = problem(1, true).scenario;
  const auto f = fields_of(1, true);
  const auto r = fmm_plan(f->sdf, f->environment, s.start, s.goal, FmmParams{});
  const auto& e = f->environment.energy_rate();
  EXPECT_LE(optimizer::mean_along(optimizer::resample(r.path, 1.0), e),
            optimizer::mean_along(optimizer::resample({s.start, s.goal}, 1.0), e));
}

TEST(Fmm, NarrowPassageBlockedByCurrentBand) {
  const auto& s = problem(4, true).scenario;
  const auto f = fields_of(4, true);
  FmmParams p{s.params.fmm_beta, s.params.epsilon, s.params.fmm_block};
  try {
    fmm_plan(f->sdf, f->environment, s.start, s.goal, p);
    FAIL() << "expected the passage to be closed";
  } catch (const PlanningFailed& e) {
    EXPECT_EQ(e.reason(), "unreachable");
  }
  // Without currents the same corridor is open.
  const auto& calm = problem(4, false).scenario;
  EXPECT_NO_THROW(fmm_plan(fields_of(4, false)->sdf, fields_of(4, false)->environment, calm.start, calm.goal, p));
}

TEST(Baselines, ShareCollisionSemanticsOnShippedScenarios) {
  for (int k = 2; k <= 5; ++k) {
    const auto& s = problem(k, false).scenario;
    for (const std::string planner : {"astar", "rrt*", "fmm"}) {
      const auto r = bench::run_planner(planner, s, fields_of(k, false), 1);
      EXPECT_TRUE(r.collision_free) << planner << " problem " << k;
    }
  }
}

TEST(Common, EffectiveInflationNeverExceedsEndpointClearance) {
  const auto f = scenes::fields(scenes::disc_map(100, {50, 50}, 10));
  const double e = effective_inflation(f->sdf, {50, 65}, {90, 90}, 20.0);
  EXPECT_LT(e, f->sdf.value(Point2(50, 65)));
  EXPECT_DOUBLE_EQ(effective_inflation(f->sdf, {10, 10}, {90, 90}, 5.0), 5.0);
}
