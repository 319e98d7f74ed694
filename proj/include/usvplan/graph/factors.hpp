#pragma once

#include <memory>
#include <vector>

#include "usvplan/fields/environment.hpp"
#include "usvplan/fields/sdf.hpp"
#include "usvplan/gp/gp_model.hpp"

namespace usvplan::graph {

using fields::Point2;
using gp::Matrix;
using gp::Vector;

struct BodyCircle {
  Point2 offset = Point2::Zero();  // body frame, meters
  double radius = 1.0;
};

// Planar body approximated by circles. The body translates with the state's
// position; offsets are not rotated (the state carries no heading).
class RobotBodyModel {
 public:
  explicit RobotBodyModel(std::vector<BodyCircle> circles);
  static RobotBodyModel disc(double radius) { return RobotBodyModel({BodyCircle{Point2::Zero(), radius}}); }

  int size() const { return static_cast<int>(circles_.size()); }
  const std::vector<BodyCircle>& circles() const { return circles_; }
  double max_radius() const;
  Point2 center(int j, const Point2& position) const { return position + circles_[j].offset; }

 private:
  std::vector<BodyCircle> circles_;
};

// The precomputed rasters a planning run works against.
struct PlanningFields {
  fields::OccupancyGrid grid;
  fields::SignedDistanceField sdf;
  fields::EnvironmentField environment;

  static std::shared_ptr<const PlanningFields> build(fields::OccupancyGrid grid,
                                                     const fields::VortexSpec* vortices);
};

// Residual over the body circles plus its Jacobian (M x 2*dof) with respect
// to one full state vector.
struct StateResidual {
  Vector residual;
  Matrix jacobian;
};

// Hinge clearance cost per circle: max(0, eps + r_j - sdf(center_j)) / sigma.
StateResidual obstacle_error(const Vector& state, const fields::SignedDistanceField& sdf,
                             const RobotBodyModel& body, double epsilon, double sigma);

// Energy rate per circle: e(center_j) / sigma.
StateResidual environment_error(const Vector& state, const fields::ScalarRaster& energy_rate,
                                const RobotBodyModel& body, double sigma);

}  // namespace usvplan::graph
