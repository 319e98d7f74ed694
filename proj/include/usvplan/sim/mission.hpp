#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "usvplan/sim/pid.hpp"
#include "usvplan/sim/vessel.hpp"

namespace usvplan::sim {

struct ControllerGains {
  // Rudder from heading error (rad -> rad).
  PidGains heading{2.0, 0.0, 0.5, 0.5, -0.6108652, 0.6108652, 1.0};
  // Thrust fraction from speed error (m/s -> [0, 1]).
  PidGains speed{1.0, 0.2, 0.0, 5.0, 0.0, 1.0, 0.5};
};

// Desired track. `times` is optional; when given it sets the desired speed of
// every leg, otherwise the vessel runs at the speed limit.
struct MissionPath {
  std::vector<Point2> waypoints;
  std::vector<double> times;
};

struct MissionParams {
  double dt = 0.01;
  double acceptance_radius = 7.0;
  double speed_limit = 5.0;  // cruise cap; also capped by VesselLimits::max_speed
  double time_budget = 0.0;   // seconds; <= 0 derives one from the path length
  VesselLimits vessel;
};

struct MissionSample {
  double t = 0.0;
  double east = 0.0;
  double north = 0.0;
  double heading = 0.0;
  double desired_heading = 0.0;
  double speed = 0.0;
  double desired_speed = 0.0;
  double cross_track = 0.0;
};

struct MissionLog {
  std::vector<MissionSample> samples;
  std::vector<double> waypoint_times;  // time each waypoint was reached
  bool completed = false;
  bool heading_flagged = false;  // a bearing was requested onto the vessel itself

  double mean_cross_track() const;
  double max_cross_track() const;
  // Mean over steps of |psi_d(k) - psi_d(k-1)|, wrap-aware.
  double mean_heading_change() const;
  Point2 final_position() const;

  // Header "t,E,N,psi,psi_d,V,V_d,cross_track".
  std::string csv() const;
  void write_csv(const std::filesystem::path& file) const;
};

// Distance from p to the nearest segment of the polyline.
double cross_track_error(const std::vector<Point2>& path, const Point2& p);

// Closed-loop run: waypoint guidance, heading and speed PIDs and the kinematic
// model. The vessel starts at rest on the first waypoint facing the next one.
// Throws InvalidInput on fewer than two waypoints or a bad dt.
MissionLog run_mission(const MissionPath& path, const ControllerGains& gains,
                       const fields::EnvironmentField* currents, const MissionParams& params = {});

}  // namespace usvplan::sim
