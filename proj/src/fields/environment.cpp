#include "usvplan/fields/environment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "usvplan/error.hpp"

namespace usvplan::fields {

Vector2 lamb_oseen_velocity(const Vortex& vortex, const Point2& p) {
  if (!(vortex.core_radius > 0.0)) throw InvalidInput("vortex core radius must be positive");
  const Vector2 d = p - vortex.center;
  const double r2 = d.squaredNorm();
  if (r2 == 0.0) return Vector2::Zero();
  const double rc2 = vortex.core_radius * vortex.core_radius;
  // Gamma / (2 pi r^2) * (1 - exp(-r^2/rc^2)) applied to the unnormalized
  // perpendicular (-dy, dx); -expm1 keeps precision near the core.
  const double scale = vortex.circulation / (2.0 * std::numbers::pi * r2) * -std::expm1(-r2 / rc2);
  return scale * Vector2(-d.y(), d.x());
}

ScalarRaster energy_rate_from_current(const GridGeometry& geometry,
                                      const std::vector<Vector2>& current) {
  geometry.validate();
  if (current.size() != geometry.cell_count()) {
    throw InvalidInput("current field size does not match grid");
  }
  std::vector<double> rate(current.size(), 0.0);
  double peak = 0.0;
  for (std::size_t i = 0; i < current.size(); ++i) {
    rate[i] = current[i].norm();
    if (!std::isfinite(rate[i])) throw InvalidInput("current field contains non-finite values");
    peak = std::max(peak, rate[i]);
  }
  if (peak > 0.0) {
    for (double& r : rate) r /= peak;
  }
  return ScalarRaster(geometry, std::move(rate));
}

namespace {

ScalarRaster component(const GridGeometry& g, const std::vector<Vector2>& c, int axis) {
  std::vector<double> v(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) v[i] = c[i][axis];
  return ScalarRaster(g, std::move(v));
}

}  // namespace

EnvironmentField::EnvironmentField(GridGeometry geometry, std::vector<Vector2> current,
                                   double max_current_speed)
    : geometry_(geometry),
      current_(std::move(current)),
      energy_rate_(energy_rate_from_current(geometry_, current_)),
      current_x_(component(geometry_, current_, 0)),
      current_y_(component(geometry_, current_, 1)),
      max_current_speed_(max_current_speed) {}

EnvironmentField EnvironmentField::calm(const GridGeometry& geometry) {
  geometry.validate();
  return EnvironmentField(geometry, std::vector<Vector2>(geometry.cell_count(), Vector2::Zero()),
                          0.0);
}

Vector2 EnvironmentField::current_at(const Point2& p) const {
  return {current_x_.sample(p).value, current_y_.sample(p).value};
}

EnvironmentField synth_vortex_field(const VortexSpec& spec, const GridGeometry& geometry) {
  geometry.validate();
  if (!(spec.max_current_speed >= 0.0)) throw InvalidInput("max current speed must be >= 0");
  for (const auto& v : spec.vortices) {
    if (!(v.core_radius > 0.0)) throw InvalidInput("vortex core radius must be positive");
  }
  std::vector<Vector2> current(geometry.cell_count(), Vector2::Zero());
  for (int y = 0; y < geometry.height; ++y) {
    for (int x = 0; x < geometry.width; ++x) {
      const Point2 p = geometry.cell_center(x, y);
      Vector2 c = Vector2::Zero();
      for (const auto& v : spec.vortices) c += lamb_oseen_velocity(v, p);
      const double speed = c.norm();
      if (speed > spec.max_current_speed) c *= spec.max_current_speed / speed;
      current[geometry.index(x, y)] = c;
    }
  }
  return EnvironmentField(geometry, std::move(current), spec.max_current_speed);
}

}  // namespace usvplan::fields
