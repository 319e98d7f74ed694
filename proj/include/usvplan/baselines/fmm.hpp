#pragma once

#include <vector>

#include "usvplan/baselines/common.hpp"

namespace usvplan::baselines {

struct FmmParams {
  double beta = 5.0;         // speed = 1 / (1 + beta * energy_rate)
  double inflation = 20.0;   // cells with clearance at or below this are closed
  double block_energy = 0.95;  // cells with energy_rate at or above this are closed
};

struct FmmResult {
  std::vector<Point2> path;  // start ... goal
  std::vector<double> arrival;  // first-arrival time per cell, +inf where unreached
  double mean_energy_rate = 0.0;
  double max_energy_rate = 0.0;
};

// First-order fast marching from the start cell over the open cells, then
// descent along the bilinear arrival-time gradient from the goal (falling back
// to steepest discrete descent where the continuous walk stalls). Throws
// PlanningFailed("unreachable") when the goal cell is never reached.
FmmResult fmm_plan(const fields::SignedDistanceField& sdf, const fields::EnvironmentField& env,
                   const Point2& start, const Point2& goal, const FmmParams& params);

}  // namespace usvplan::baselines
