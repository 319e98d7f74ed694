#pragma once

#include <cstdint>
#include <vector>

#include "usvplan/baselines/common.hpp"

namespace usvplan::baselines {

struct RrtStarParams {
  double step = 10.0;          // extension length l
  double goal_bias = 0.05;     // probability of sampling the goal
  int max_samples = 200000;
  double inflation = 20.0;     // required clearance along edges
  // Rewiring radius gamma * sqrt(log n / n); gamma <= 0 picks the value that
  // covers the free space.
  double gamma = 0.0;
  bool stop_at_first_solution = true;
  double timeout_s = 30.0;
};

struct RrtStarResult {
  std::vector<Point2> path;  // start ... goal
  int samples = 0;           // iterations drawn
  int tree_size = 0;
};

// Throws PlanningFailed("budget-exhausted" or "timeout") when no goal
// connection was found.
RrtStarResult rrt_star_plan(const fields::SignedDistanceField& sdf, const Point2& start,
                            const Point2& goal, const RrtStarParams& params, std::uint64_t seed);

}  // namespace usvplan::baselines
