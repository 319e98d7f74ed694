#pragma once

// Small synthetic workspaces shared by the tests.

#include <memory>

#include "usvplan/graph/factor_graph.hpp"
#include "usvplan/optimizer/planner.hpp"

namespace scenes {

using usvplan::fields::GridGeometry;
using usvplan::fields::OccupancyGrid;
using usvplan::fields::Point2;

inline OccupancyGrid disc_map(int n, Point2 c, double r) {
  OccupancyGrid g(GridGeometry{n, n, 1.0, Point2::Zero()});
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x)
      if ((Point2(x, y) - c).norm() <= r) g.set(x, y, true);
  return g;
}

inline std::shared_ptr<const usvplan::graph::PlanningFields> fields(
    OccupancyGrid g, const usvplan::fields::VortexSpec* v = nullptr) {
  return usvplan::graph::PlanningFields::build(std::move(g), v);
}

inline usvplan::fields::VortexSpec vortex(Point2 c, double gamma, double rc, double vmax = 2.0) {
  return usvplan::fields::VortexSpec{{usvplan::fields::Vortex{c, gamma, rc}}, vmax};
}

}  // namespace scenes
