#include "usvplan/optimizer/path_tools.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "usvplan/error.hpp"

namespace usvplan::optimizer {

DensePath densify(const std::vector<Vector>& support, const gp::GpModel& model, int resolution) {
  if (resolution < 1) throw InvalidInput("densify resolution must be >= 1");
  if (static_cast<int>(support.size()) != model.support_count()) {
    throw InvalidInput("support state count does not match the GP model");
  }
  auto point = [](double t, const Vector& x) {
    return PathPoint{t, Point2(x[0], x[1]), Point2(x[2], x[3])};
  };
  DensePath path;
  path.reserve(static_cast<std::size_t>(model.segment_count()) * resolution + 1);
  // The weights depend only on the segment length, so equal segments share them.
  std::vector<gp::InterpolationCoeffs> weights;
  double weights_dt = -1.0;
  for (int i = 0; i < model.segment_count(); ++i) {
    path.push_back(point(model.time(i), support[i]));
    const double t0 = model.time(i);
    const double dt = model.time(i + 1) - t0;
    if (std::abs(dt - weights_dt) > 1e-12 * dt) {
      weights.clear();
      for (int k = 1; k < resolution; ++k) weights.push_back(model.coeffs(i, t0 + dt * k / resolution));
      weights_dt = dt;
    }
    for (int k = 1; k < resolution; ++k) {
      const auto& w = weights[k - 1];
      path.push_back(point(t0 + dt * k / resolution, w.lambda * support[i] + w.psi * support[i + 1]));
    }
  }
  path.push_back(point(model.time(model.segment_count()), support.back()));
  return path;
}

std::vector<Point2> positions(const DensePath& path) {
  std::vector<Point2> out;
  out.reserve(path.size());
  for (const auto& p : path) out.push_back(p.position);
  return out;
}

double path_length(const std::vector<Point2>& points) {
  double total = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) total += (points[i] - points[i - 1]).norm();
  return total;
}

double path_length(const DensePath& path) {
  double total = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    total += (path[i].position - path[i - 1].position).norm();
  }
  return total;
}

CollisionReport collision_check(const std::vector<Point2>& points,
                                const fields::SignedDistanceField& sdf,
                                const graph::RobotBodyModel& body) {
  if (points.empty()) throw InvalidInput("collision check needs a non-empty path");
  CollisionReport report;
  report.min_clearance = std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    for (int j = 0; j < body.size(); ++j) {
      const double clearance = sdf.value(body.center(j, p)) - body.circles()[j].radius;
      report.min_clearance = std::min(report.min_clearance, clearance);
    }
  }
  report.collision_free = report.min_clearance > 0.0;
  return report;
}

CollisionReport collision_check(const DensePath& path, const fields::SignedDistanceField& sdf,
                                const graph::RobotBodyModel& body) {
  return collision_check(positions(path), sdf, body);
}

double mean_along(const std::vector<Point2>& points, const fields::ScalarRaster& raster) {
  if (points.empty()) return 0.0;
  if (points.size() == 1) return raster.sample(points.front()).value;
  double weighted = 0.0;
  double total = 0.0;
  double prev = raster.sample(points.front()).value;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double cur = raster.sample(points[i]).value;
    const double len = (points[i] - points[i - 1]).norm();
    weighted += 0.5 * (prev + cur) * len;
    total += len;
    prev = cur;
  }
  return total > 0.0 ? weighted / total : prev;
}

double mean_turn_angle(const std::vector<Point2>& points) {
  std::vector<Point2> edges;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const Point2 e = points[i] - points[i - 1];
    if (e.norm() > 1e-9) edges.push_back(e);
  }
  if (edges.size() < 2) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 1; i < edges.size(); ++i) {
    const double cross = edges[i - 1].x() * edges[i].y() - edges[i - 1].y() * edges[i].x();
    sum += std::abs(std::atan2(cross, edges[i - 1].dot(edges[i])));
  }
  return sum / static_cast<double>(edges.size() - 1);
}

std::vector<Point2> resample(const std::vector<Point2>& points, double max_step) {
  if (!(max_step > 0.0)) throw InvalidInput("resample step must be positive");
  std::vector<Point2> out;
  if (points.empty()) return out;
  out.push_back(points.front());
  for (std::size_t i = 1; i < points.size(); ++i) {
    const Point2 a = points[i - 1];
    const Point2 b = points[i];
    const int pieces = std::max(1, static_cast<int>(std::ceil((b - a).norm() / max_step)));
    for (int k = 1; k <= pieces; ++k) out.push_back(a + (b - a) * (static_cast<double>(k) / pieces));
  }
  return out;
}

DensePath time_parametrize(const std::vector<Point2>& points, double total_time) {
  DensePath path;
  if (points.empty()) return path;
  const double length = path_length(points);
  const double speed = length > 0.0 && total_time > 0.0 ? length / total_time : 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0) s += (points[i] - points[i - 1]).norm();
    PathPoint p;
    p.position = points[i];
    p.t = length > 0.0 ? total_time * s / length : 0.0;
    if (points.size() > 1) {
      const std::size_t j = std::min(i, points.size() - 2);
      const Point2 e = points[j + 1] - points[j];
      const double n = e.norm();
      p.velocity = n > 0.0 ? Point2(e / n * speed) : Point2::Zero();
    }
    path.push_back(p);
  }
  return path;
}

}  // namespace usvplan::optimizer
