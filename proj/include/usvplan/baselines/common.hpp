#pragma once

#include <string>
#include <vector>

#include "usvplan/graph/factors.hpp"
#include "usvplan/optimizer/planner.hpp"

namespace usvplan::baselines {

using fields::Point2;

// True when every point on the segment a-b, sampled at most half a cell
// apart, has bilinear clearance above `clearance`.
bool segment_clear(const fields::SignedDistanceField& sdf, const Point2& a, const Point2& b,
                   double clearance);

// Clearance demanded by the baselines: `inflation`, lowered to just under the
// endpoints' own clearance when either endpoint sits closer than that.
double effective_inflation(const fields::SignedDistanceField& sdf, const Point2& start,
                           const Point2& goal, double inflation);

// Wraps a polyline in the optimizer's result type: densified to one sample per
// cell, timed over `total_time`, collision-checked with a disc body.
optimizer::PlanResult polyline_result(std::string planner, const std::vector<Point2>& polyline,
                                      const graph::PlanningFields& fields, double body_radius,
                                      double total_time, double duration_ms);

}  // namespace usvplan::baselines
