#pragma once

#include <vector>

#include "usvplan/graph/factors.hpp"

namespace usvplan::optimizer {

using fields::Point2;
using gp::Vector;

struct PathPoint {
  double t = 0.0;
  Point2 position = Point2::Zero();
  Point2 velocity = Point2::Zero();
};

using DensePath = std::vector<PathPoint>;

// Interpolates every segment at `resolution` uniform sub-steps (resolution 1
// keeps only the support states); support states appear in time order.
DensePath densify(const std::vector<Vector>& support, const gp::GpModel& model, int resolution);

std::vector<Point2> positions(const DensePath& path);

double path_length(const std::vector<Point2>& points);
double path_length(const DensePath& path);

struct CollisionReport {
  bool collision_free = true;
  double min_clearance = 0.0;  // min over points and circles of sdf - radius
};

CollisionReport collision_check(const std::vector<Point2>& points,
                                const fields::SignedDistanceField& sdf,
                                const graph::RobotBodyModel& body);
CollisionReport collision_check(const DensePath& path, const fields::SignedDistanceField& sdf,
                                const graph::RobotBodyModel& body);

// Arc-length weighted mean of a raster along a polyline (trapezoid rule).
double mean_along(const std::vector<Point2>& points, const fields::ScalarRaster& raster);

// Mean absolute heading change between consecutive polyline segments, radians.
double mean_turn_angle(const std::vector<Point2>& points);

// Inserts points so that no edge exceeds max_step; keeps the original vertices.
std::vector<Point2> resample(const std::vector<Point2>& points, double max_step);

// Assigns times proportional to arc length over [0, total_time] and
// constant-speed velocities along each edge.
DensePath time_parametrize(const std::vector<Point2>& points, double total_time);

}  // namespace usvplan::optimizer
