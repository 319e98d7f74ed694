#pragma once

namespace usvplan::sim {

struct PidGains {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
  double integral_clamp = 1.0;  // bound on |integral of error|
  double output_min = -1.0;
  double output_max = 1.0;
  double rate_limit = 0.0;  // max |d output / dt|; <= 0 disables

  // Throws InvalidInput on negative gains or a non-positive clamp.
  void validate() const;
};

struct PidState {
  double integral = 0.0;
  double previous_error = 0.0;
  double previous_output = 0.0;
  bool primed = false;  // false until the first step; the derivative starts at zero
};

// Plain PID on `error`. Wrap angular errors before calling (see wrap_pi).
double pid_step(double error, PidState& state, const PidGains& gains, double dt);

}  // namespace usvplan::sim
