#pragma once

#include "usvplan/sim/vessel.hpp"

namespace usvplan::sim {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Maps any angle into (0, 2pi]; north is 2pi.
double normalize_heading(double angle);
// Maps any angle into (-pi, pi].
double wrap_pi(double angle);

struct FrameAngle {
  double value = 0.0;
  bool flagged = false;  // input was outside the documented domain
};

// (-pi, pi] -> (0, 2pi]: positive angles are kept, the rest gain 2pi.
FrameAngle convert_frame(double angle);
// Inverse of convert_frame: (0, 2pi] -> (-pi, pi].
FrameAngle invert_frame(double angle);

struct HeadingCommand {
  double heading = 0.0;
  bool flagged = false;  // waypoint coincided with the vessel
};

// Bearing from the vessel to the waypoint, clockwise from north in (0, 2pi].
// Coincident points keep `previous`.
HeadingCommand refine_heading(const Point2& position, const Point2& waypoint, double previous);

}  // namespace usvplan::sim
