#include "usvplan/baselines/common.hpp"

#include <algorithm>
#include <cmath>

namespace usvplan::baselines {

bool segment_clear(const fields::SignedDistanceField& sdf, const Point2& a, const Point2& b,
                   double clearance) {
  const double len = (b - a).norm();
  const int n = std::max(1, static_cast<int>(std::ceil(len / (0.5 * sdf.geometry().cell_size))));
  for (int k = 0; k <= n; ++k) {
    const Point2 p = a + (b - a) * (static_cast<double>(k) / n);
    if (!(sdf.value(p) > clearance)) return false;
  }
  return true;
}

double effective_inflation(const fields::SignedDistanceField& sdf, const Point2& start,
                           const Point2& goal, double inflation) {
  const double endpoint = std::min(sdf.value(start), sdf.value(goal));
  return std::min(inflation, endpoint - 1e-6);
}

optimizer::PlanResult polyline_result(std::string planner, const std::vector<Point2>& polyline,
                                      const graph::PlanningFields& fields, double body_radius,
                                      double total_time, double duration_ms) {
  optimizer::PlanResult r;
  r.planner = std::move(planner);
  const auto dense = optimizer::resample(polyline, fields.grid.cell_size());
  r.path = optimizer::time_parametrize(dense, total_time);
  r.length = optimizer::path_length(dense);
  const auto report = optimizer::collision_check(dense, fields.sdf, graph::RobotBodyModel::disc(body_radius));
  r.collision_free = report.collision_free;
  r.min_clearance = report.min_clearance;
  r.mean_energy_rate = optimizer::mean_along(dense, fields.environment.energy_rate());
  r.duration_ms = duration_ms;
  return r;
}

}  // namespace usvplan::baselines
