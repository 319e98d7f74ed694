#include "usvplan/graph/factors.hpp"

#include <algorithm>

#include "usvplan/error.hpp"
#include "usvplan/fields/sdf.hpp"

namespace usvplan::graph {

RobotBodyModel::RobotBodyModel(std::vector<BodyCircle> circles) : circles_(std::move(circles)) {
  if (circles_.empty()) throw InvalidInput("robot body needs at least one circle");
  for (const auto& c : circles_) {
    if (!(c.radius > 0.0)) throw InvalidInput("body circle radius must be positive");
  }
}

double RobotBodyModel::max_radius() const {
  double r = 0.0;
  for (const auto& c : circles_) r = std::max(r, c.radius);
  return r;
}

std::shared_ptr<const PlanningFields> PlanningFields::build(fields::OccupancyGrid grid,
                                                            const fields::VortexSpec* vortices) {
  auto f = std::make_shared<PlanningFields>();
  f->sdf = fields::compute_sdf(grid);
  f->environment = vortices ? fields::synth_vortex_field(*vortices, grid.geometry())
                            : fields::EnvironmentField::calm(grid.geometry());
  f->grid = std::move(grid);
  return f;
}

namespace {

void check_state(const Vector& state) {
  if (state.size() < 4 || state.size() % 2 != 0) {
    throw InvalidInput("factor evaluation expects a planar state (x, y, vx, vy)");
  }
}

}  // namespace

StateResidual obstacle_error(const Vector& state, const fields::SignedDistanceField& sdf,
                             const RobotBodyModel& body, double epsilon, double sigma) {
  check_state(state);
  const int m = body.size();
  StateResidual out{Vector::Zero(m), Matrix::Zero(m, state.size())};
  const Point2 position = state.head<2>();
  for (int j = 0; j < m; ++j) {
    const auto s = sdf.sample(body.center(j, position));
    const double hinge = epsilon + body.circles()[j].radius - s.value;
    if (hinge > 0.0) {
      out.residual[j] = hinge / sigma;
      out.jacobian.block(j, 0, 1, 2) = -s.gradient.transpose() / sigma;
    }
  }
  return out;
}

StateResidual environment_error(const Vector& state, const fields::ScalarRaster& energy_rate,
                                const RobotBodyModel& body, double sigma) {
  check_state(state);
  const int m = body.size();
  StateResidual out{Vector::Zero(m), Matrix::Zero(m, state.size())};
  const Point2 position = state.head<2>();
  for (int j = 0; j < m; ++j) {
    const auto s = energy_rate.sample(body.center(j, position));
    out.residual[j] = s.value / sigma;
    out.jacobian.block(j, 0, 1, 2) = s.gradient.transpose() / sigma;
  }
  return out;
}

}  // namespace usvplan::graph
