#pragma once

#include "usvplan/fields/environment.hpp"

namespace usvplan::sim {

using fields::Point2;
using fields::Vector2;

// Actuator and envelope limits of the simulated catamaran. Defaults follow a
// 20 ft class hull; they are implementation values, not measured ones.
struct VesselLimits {
  double max_speed = 10.0;        // V_max, m/s
  double max_rudder = 0.6108652;  // 35 deg
  double surge_time_constant = 2.0;
  double yaw_time_constant = 1.0;
  double yaw_gain = 0.5;  // k_r, (rad/s) per rad of rudder
};

// Planar pose in the north-east frame plus body rates and actuator positions.
// Heading is measured clockwise from north and kept in (0, 2pi].
struct VesselState {
  double east = 0.0;
  double north = 0.0;
  double heading = 2.0 * 3.14159265358979323846;
  double surge = 0.0;
  double sway = 0.0;
  double yaw_rate = 0.0;
  double rudder = 0.0;  // rad, positive turns to starboard
  double thrust = 0.0;  // fraction of maximum in [0, 1]

  Point2 position() const { return {east, north}; }
  // Ground velocity (east, north) without ambient current.
  Vector2 body_velocity() const;
};

struct ActuatorCommand {
  double rudder = 0.0;
  double thrust = 0.0;
};

// One RK4 step of the kinematic model
//   N' = u cos(psi) - v sin(psi) + c_N,  E' = u sin(psi) + v cos(psi) + c_E,
//   psi' = r,  u' = (thrust V_max - u) / T_u,  r' = (k_r rudder - r) / T_r.
// Commands are clamped to the actuator envelope and held over the step.
// `currents` may be null (calm water); map x is east and map y is north.
VesselState step_kinematics(const VesselState& state, const ActuatorCommand& command,
                            const fields::EnvironmentField* currents, double dt,
                            const VesselLimits& limits = {});

}  // namespace usvplan::sim
