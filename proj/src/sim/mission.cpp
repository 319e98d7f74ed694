#include "usvplan/sim/mission.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "usvplan/error.hpp"
#include "usvplan/sim/guidance.hpp"

namespace usvplan::sim {

double MissionLog::mean_cross_track() const {
  if (samples.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& s : samples) sum += s.cross_track;
  return sum / static_cast<double>(samples.size());
}

double MissionLog::max_cross_track() const {
  double m = 0.0;
  for (const auto& s : samples) m = std::max(m, s.cross_track);
  return m;
}

double MissionLog::mean_heading_change() const {
  if (samples.size() < 2) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    sum += std::abs(wrap_pi(samples[i].desired_heading - samples[i - 1].desired_heading));
  }
  return sum / static_cast<double>(samples.size() - 1);
}

Point2 MissionLog::final_position() const {
  if (samples.empty()) return Point2::Zero();
  return {samples.back().east, samples.back().north};
}

std::string MissionLog::csv() const {
  std::ostringstream out;
  out.precision(10);
  out << "t,E,N,psi,psi_d,V,V_d,cross_track\n";
  for (const auto& s : samples) {
    out << s.t << ',' << s.east << ',' << s.north << ',' << s.heading << ','
        << s.desired_heading << ',' << s.speed << ',' << s.desired_speed << ','
        << s.cross_track << '\n';
  }
  return out.str();
}

void MissionLog::write_csv(const std::filesystem::path& file) const {
  std::ofstream out(file);
  if (!out) throw IoError("cannot write " + file.string());
  out << csv();
  if (!out) throw IoError("write failed: " + file.string());
}

double cross_track_error(const std::vector<Point2>& path, const Point2& p) {
  if (path.empty()) return 0.0;
  double best = (p - path.front()).norm();
  for (std::size_t i = 1; i < path.size(); ++i) {
    const Point2 a = path[i - 1];
    const Point2 ab = path[i] - a;
    const double len2 = ab.squaredNorm();
    const double t = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, (a + t * ab - p).norm());
  }
  return best;
}

namespace {

double polyline_length(const std::vector<Point2>& w) {
  double len = 0.0;
  for (std::size_t i = 1; i < w.size(); ++i) len += (w[i] - w[i - 1]).norm();
  return len;
}

}  // namespace

MissionLog run_mission(const MissionPath& path, const ControllerGains& gains,
                       const fields::EnvironmentField* currents, const MissionParams& params) {
  const auto& w = path.waypoints;
  if (w.size() < 2) throw InvalidInput("run_mission: path needs at least two waypoints");
  if (!path.times.empty() && path.times.size() != w.size()) {
    throw InvalidInput("run_mission: times must match waypoints");
  }
  if (!(params.dt > 0.0)) throw InvalidInput("run_mission: dt must be positive");
  gains.heading.validate();
  gains.speed.validate();

  const double v_cap = std::min(params.speed_limit, params.vessel.max_speed);
  const double budget = params.time_budget > 0.0
                            ? params.time_budget
                            : 3.0 * polyline_length(w) / std::max(v_cap, 1e-3) + 60.0;
  const auto steps = static_cast<long>(std::ceil(budget / params.dt));

  auto leg_speed = [&](std::size_t i) {
    if (path.times.empty()) return v_cap;
    const double dt = path.times[i] - path.times[i - 1];
    const double d = (w[i] - w[i - 1]).norm();
    return dt > 0.0 ? std::min(v_cap, d / dt) : v_cap;
  };

  MissionLog log;
  VesselState state;
  state.east = w.front().x();
  state.north = w.front().y();

  std::size_t active = 1;
  auto advance = [&](double t) {
    while (active < w.size() && (w[active] - state.position()).norm() <= params.acceptance_radius) {
      log.waypoint_times.push_back(t);
      ++active;
    }
  };
  advance(0.0);

  double desired = state.heading;
  {
    const Point2 target = w[std::min(active, w.size() - 1)];
    const auto h = refine_heading(state.position(), target, state.heading);
    state.heading = desired = h.heading;
  }

  PidState heading_pid;
  PidState speed_pid;
  auto record = [&](double t, double v_d) {
    MissionSample s;
    s.t = t;
    s.east = state.east;
    s.north = state.north;
    s.heading = state.heading;
    s.desired_heading = desired;
    Vector2 ground = state.body_velocity();
    if (currents != nullptr) ground += currents->current_at(state.position());
    s.speed = ground.norm();
    s.desired_speed = v_d;
    s.cross_track = cross_track_error(w, state.position());
    log.samples.push_back(s);
  };

  for (long k = 0;; ++k) {
    const double t = static_cast<double>(k) * params.dt;
    if (active >= w.size()) {
      record(t, 0.0);
      log.completed = true;
      break;
    }
    const auto h = refine_heading(state.position(), w[active], desired);
    log.heading_flagged = log.heading_flagged || h.flagged;
    desired = h.heading;
    const double v_d = leg_speed(active);
    record(t, v_d);
    if (k >= steps) break;

    ActuatorCommand cmd;
    cmd.rudder = pid_step(wrap_pi(desired - state.heading), heading_pid, gains.heading, params.dt);
    cmd.thrust = pid_step(v_d - state.surge, speed_pid, gains.speed, params.dt);
    state = step_kinematics(state, cmd, currents, params.dt, params.vessel);
    advance(t + params.dt);
  }
  return log;
}

}  // namespace usvplan::sim
