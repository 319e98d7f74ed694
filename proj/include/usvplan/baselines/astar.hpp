#pragma once

#include <vector>

#include "usvplan/baselines/common.hpp"

namespace usvplan::baselines {

struct GridSearchParams {
  double step = 10.0;       // lattice spacing l
  double inflation = 20.0;  // required clearance along edges
  double timeout_s = 30.0;
};

struct GridSearchResult {
  std::vector<Point2> path;  // lattice vertices, start and goal included
  long expanded = 0;
};

// A* over a lattice anchored at `start` with spacing l, 8-connected, Euclidean
// edge costs and heuristic. The goal joins from any lattice node within
// l*sqrt(2) whose straight edge to it is clear. Throws PlanningFailed with
// reason "no-path" or "timeout".
GridSearchResult astar_plan(const fields::SignedDistanceField& sdf, const Point2& start,
                            const Point2& goal, const GridSearchParams& params);

}  // namespace usvplan::baselines
