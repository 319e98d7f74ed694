#pragma once

#include <vector>

#include "usvplan/fields/grid.hpp"

namespace usvplan::fields {

using Vector2 = Eigen::Vector2d;

// Lamb-Oseen vortex. Positive circulation rotates counter-clockwise in the
// (x, y) plane.
struct Vortex {
  Point2 center = Point2::Zero();
  double circulation = 0.0;  // m^2/s
  double core_radius = 1.0;  // m
};

struct VortexSpec {
  std::vector<Vortex> vortices;
  double max_current_speed = 2.0;  // m/s, applied after summation
};

// Tangential velocity induced by one vortex at p:
//   |v| = |G| / (2 pi r) * (1 - exp(-r^2 / rc^2)), perpendicular to (p - c).
Vector2 lamb_oseen_velocity(const Vortex& vortex, const Point2& p);

// Ambient current field plus its normalized energy-rate raster.
class EnvironmentField {
 public:
  EnvironmentField() = default;
  EnvironmentField(GridGeometry geometry, std::vector<Vector2> current, double max_current_speed);

  // Zero currents everywhere.
  static EnvironmentField calm(const GridGeometry& geometry);

  const GridGeometry& geometry() const { return geometry_; }
  const std::vector<Vector2>& current() const { return current_; }
  const Vector2& current_at(int x, int y) const { return current_[geometry_.index(x, y)]; }
  // Bilinear current at a world point (clamped to the lattice).
  Vector2 current_at(const Point2& p) const;

  const ScalarRaster& energy_rate() const { return energy_rate_; }
  double max_current_speed() const { return max_current_speed_; }

 private:
  GridGeometry geometry_;
  std::vector<Vector2> current_;
  ScalarRaster energy_rate_;
  ScalarRaster current_x_;
  ScalarRaster current_y_;
  double max_current_speed_ = 0.0;
};

// energy_rate = |current| / max |current|; an all-zero field maps to zero.
ScalarRaster energy_rate_from_current(const GridGeometry& geometry,
                                      const std::vector<Vector2>& current);

EnvironmentField synth_vortex_field(const VortexSpec& spec, const GridGeometry& geometry);

}  // namespace usvplan::fields
