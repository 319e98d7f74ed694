#include "usvplan/sim/pid.hpp"

#include <algorithm>
#include <cmath>

#include "usvplan/error.hpp"

namespace usvplan::sim {

void PidGains::validate() const {
  if (kp < 0.0 || ki < 0.0 || kd < 0.0) throw InvalidInput("PID gains must be non-negative");
  if (!(integral_clamp > 0.0)) throw InvalidInput("PID integral clamp must be positive");
  if (!(output_min <= output_max)) throw InvalidInput("PID output range is empty");
}

double pid_step(double error, PidState& state, const PidGains& gains, double dt) {
  if (!(dt > 0.0)) throw InvalidInput("pid_step: dt must be positive");
  state.integral = std::clamp(state.integral + error * dt, -gains.integral_clamp,
                              gains.integral_clamp);
  const double derivative = state.primed ? (error - state.previous_error) / dt : 0.0;
  double out = gains.kp * error + gains.ki * state.integral + gains.kd * derivative;
  out = std::clamp(out, gains.output_min, gains.output_max);
  if (gains.rate_limit > 0.0) {
    const double step = gains.rate_limit * dt;
    out = std::clamp(out, state.previous_output - step, state.previous_output + step);
  }
  state.previous_error = error;
  state.previous_output = out;
  state.primed = true;
  return out;
}

}  // namespace usvplan::sim
