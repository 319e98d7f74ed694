#include "usvplan/sim/guidance.hpp"

#include <cmath>

namespace usvplan::sim {

double normalize_heading(double angle) {
  double a = std::fmod(angle, kTwoPi);
  if (a <= 0.0) a += kTwoPi;
  return a;
}

double wrap_pi(double angle) {
  double a = std::fmod(angle + kPi, kTwoPi);
  if (a <= 0.0) a += kTwoPi;
  return a - kPi;
}

FrameAngle convert_frame(double angle) {
  FrameAngle out;
  if (!(angle > -kPi && angle <= kPi)) {
    out.flagged = true;
    angle = wrap_pi(angle);
  }
  out.value = angle > 0.0 ? angle : angle + kTwoPi;
  return out;
}

FrameAngle invert_frame(double angle) {
  FrameAngle out;
  if (!(angle > 0.0 && angle <= kTwoPi)) {
    out.flagged = true;
    angle = normalize_heading(angle);
  }
  out.value = angle > kPi ? angle - kTwoPi : angle;
  return out;
}

HeadingCommand refine_heading(const Point2& position, const Point2& waypoint, double previous) {
  const Point2 d = waypoint - position;
  if (d.x() == 0.0 && d.y() == 0.0) return {previous, true};
  // atan2(east, north) is already clockwise from north in (-pi, pi].
  return {convert_frame(std::atan2(d.x(), d.y())).value, false};
}

}  // namespace usvplan::sim
