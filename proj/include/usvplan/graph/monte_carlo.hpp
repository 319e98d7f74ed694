#pragma once

#include <cstdint>

#include "usvplan/fields/grid.hpp"

namespace usvplan::graph {

using fields::Point2;

// Axis-aligned sampling region in world coordinates.
struct Region {
  Point2 lower = Point2::Zero();
  Point2 upper = Point2::Zero();

  static Region bounding(const Point2& a, const Point2& b, double inflate);
  // Intersection with the footprint of the grid cells.
  Region clipped_to(const fields::GridGeometry& g) const;
  bool empty() const { return !(upper.x() > lower.x() && upper.y() > lower.y()); }
};

struct McEstimate {
  double p_obs = 0.0;        // fraction of samples inside obstacles
  int samples = 0;           // N_spl
  int accepted = 0;          // N_ac, collision-free samples
  std::uint64_t seed = 0;
};

// Uniform continuous sampling of `region` (clipped to the grid). A sample is
// accepted when it falls in a free cell; P_obs = 1 - N_ac / N_spl.
McEstimate mc_estimate_obstacle_space(const fields::OccupancyGrid& grid, const Region& region,
                                      int samples, std::uint64_t seed);

// Exhaustive variant: one sample per cell center inside the region, which
// yields the exact obstacle fraction of those cells.
McEstimate traverse_obstacle_space(const fields::OccupancyGrid& grid, const Region& region);

}  // namespace usvplan::graph
