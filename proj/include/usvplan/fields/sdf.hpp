#pragma once

#include "usvplan/fields/grid.hpp"

namespace usvplan::fields {

// Signed Euclidean clearance sampled at cell centers: positive in free space,
// non-positive inside obstacles, clamped to [-max_cap, max_cap].
class SignedDistanceField {
 public:
  SignedDistanceField() = default;
  SignedDistanceField(ScalarRaster raster, double max_cap)
      : raster_(std::move(raster)), max_cap_(max_cap) {}

  const GridGeometry& geometry() const { return raster_.geometry(); }
  const ScalarRaster& raster() const { return raster_; }
  double max_cap() const { return max_cap_; }

  double at(int x, int y) const { return raster_.at(x, y); }
  RasterSample sample(const Point2& p) const { return raster_.sample(p); }
  double value(const Point2& p) const { return raster_.sample(p).value; }

 private:
  ScalarRaster raster_;
  double max_cap_ = 0.0;
};

// Exact distance transform of both the obstacle set and the free set, combined
// as (distance to nearest obstacle center) - (distance to nearest free center).
SignedDistanceField compute_sdf(const OccupancyGrid& grid, double max_cap);

// Cap defaults to max(width, height) * cell_size.
SignedDistanceField compute_sdf(const OccupancyGrid& grid);

}  // namespace usvplan::fields
