#include "usvplan/sim/vessel.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "usvplan/sim/guidance.hpp"

namespace usvplan::sim {

Vector2 VesselState::body_velocity() const {
  const double c = std::cos(heading);
  const double s = std::sin(heading);
  return {surge * s + sway * c, surge * c - sway * s};
}

namespace {

// east, north, heading, surge, yaw rate
using Derivative = std::array<double, 5>;

struct Rhs {
  const fields::EnvironmentField* currents;
  const VesselLimits& limits;
  double sway;
  double thrust;
  double rudder;

  Derivative operator()(const Derivative& x) const {
    const double c = std::cos(x[2]);
    const double s = std::sin(x[2]);
    double de = x[3] * s + sway * c;
    double dn = x[3] * c - sway * s;
    if (currents != nullptr) {
      const Vector2 flow = currents->current_at(Point2(x[0], x[1]));
      de += flow.x();
      dn += flow.y();
    }
    return {de, dn, x[4], (thrust * limits.max_speed - x[3]) / limits.surge_time_constant,
            (limits.yaw_gain * rudder - x[4]) / limits.yaw_time_constant};
  }
};

Derivative axpy(const Derivative& x, double a, const Derivative& k) {
  Derivative out;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] + a * k[i];
  return out;
}

}  // namespace

VesselState step_kinematics(const VesselState& state, const ActuatorCommand& command,
                            const fields::EnvironmentField* currents, double dt,
                            const VesselLimits& limits) {
  VesselState next = state;
  next.rudder = std::clamp(command.rudder, -limits.max_rudder, limits.max_rudder);
  next.thrust = std::clamp(command.thrust, 0.0, 1.0);

  const Rhs f{currents, limits, state.sway, next.thrust, next.rudder};
  const Derivative x{state.east, state.north, state.heading, state.surge, state.yaw_rate};
  const Derivative k1 = f(x);
  const Derivative k2 = f(axpy(x, 0.5 * dt, k1));
  const Derivative k3 = f(axpy(x, 0.5 * dt, k2));
  const Derivative k4 = f(axpy(x, dt, k3));
  Derivative y;
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }

  next.east = y[0];
  next.north = y[1];
  next.heading = normalize_heading(y[2]);
  next.yaw_rate = y[4];
  // Keep through-water speed inside the hull envelope.
  const double speed = std::hypot(y[3], state.sway);
  const double scale = speed > limits.max_speed ? limits.max_speed / speed : 1.0;
  next.surge = y[3] * scale;
  next.sway = state.sway * scale;
  return next;
}

}  // namespace usvplan::sim
