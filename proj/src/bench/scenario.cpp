#include "usvplan/bench/scenario.hpp"

#include <fstream>

#include "usvplan/error.hpp"

namespace usvplan::bench {

using nlohmann::json;

namespace {

json point(const Point2& p) { return json::array({p.x(), p.y()}); }

Point2 read_point(const json& j, const char* key) {
  const auto& a = j.at(key);
  if (!a.is_array() || a.size() != 2) throw InvalidInput(std::string(key) + " must be [x, y]");
  return Point2(a[0].get<double>(), a[1].get<double>());
}

template <class T>
void read_opt(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

json to_json(const Scenario& s) {
  const auto& p = s.params;
  json params = {
      {"epsilon", p.epsilon},       {"sigma_obs", p.sigma_obs},
      {"sigma_env", p.sigma_env},   {"t_max", p.t_max},
      {"segments", p.segments},     {"step", p.step},
      {"lambda", p.lambda},         {"mc_samples", p.mc_samples},
      {"qc", p.qc},                 {"body_radius", p.body_radius},
      {"fixed_interpolation", p.fixed_interpolation},
      {"fmm_beta", p.fmm_beta},     {"fmm_block", p.fmm_block},
      {"rrt_max_samples", p.rrt_max_samples},
      {"rrt_goal_bias", p.rrt_goal_bias},
      {"timeout_s", p.timeout_s},
  };
  json j = {
      {"name", s.name},
      {"map", s.map_file.generic_string()},
      {"start", point(s.start)},
      {"goal", point(s.goal)},
      {"params", params},
      {"replans", s.replans},
      {"seed", s.seed},
      {"repetitions", s.repetitions},
  };
  if (s.currents) {
    json vs = json::array();
    for (const auto& v : s.currents->vortices) {
      vs.push_back({{"center", point(v.center)}, {"circulation", v.circulation}, {"core_radius", v.core_radius}});
    }
    j["currents"] = {{"vortices", vs}, {"max_current_speed", s.currents->max_current_speed}};
  } else {
    j["currents"] = nullptr;
  }
  return j;
}

Scenario scenario_from_json(const json& j, const std::filesystem::path& base_dir) {
  Scenario s;
  try {
    s.name = j.at("name").get<std::string>();
    s.map_file = j.at("map").get<std::string>();
    if (s.map_file.is_relative() && !base_dir.empty()) s.map_file = base_dir / s.map_file;
    s.start = read_point(j, "start");
    s.goal = read_point(j, "goal");
    read_opt(j, "replans", s.replans);
    read_opt(j, "seed", s.seed);
    read_opt(j, "repetitions", s.repetitions);
    if (j.contains("params")) {
      const auto& p = j.at("params");
      auto& o = s.params;
      read_opt(p, "epsilon", o.epsilon);
      read_opt(p, "sigma_obs", o.sigma_obs);
      read_opt(p, "sigma_env", o.sigma_env);
      read_opt(p, "t_max", o.t_max);
      read_opt(p, "segments", o.segments);
      read_opt(p, "step", o.step);
      read_opt(p, "lambda", o.lambda);
      read_opt(p, "mc_samples", o.mc_samples);
      read_opt(p, "qc", o.qc);
      read_opt(p, "body_radius", o.body_radius);
      read_opt(p, "fixed_interpolation", o.fixed_interpolation);
      read_opt(p, "fmm_beta", o.fmm_beta);
      read_opt(p, "fmm_block", o.fmm_block);
      read_opt(p, "rrt_max_samples", o.rrt_max_samples);
      read_opt(p, "rrt_goal_bias", o.rrt_goal_bias);
      read_opt(p, "timeout_s", o.timeout_s);
    }
    if (j.contains("currents") && !j.at("currents").is_null()) {
      const auto& c = j.at("currents");
      fields::VortexSpec spec;
      read_opt(c, "max_current_speed", spec.max_current_speed);
      for (const auto& v : c.at("vortices")) {
        spec.vortices.push_back(fields::Vortex{read_point(v, "center"), v.at("circulation").get<double>(),
                                               v.at("core_radius").get<double>()});
      }
      s.currents = std::move(spec);
    }
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("scenario schema: ") + e.what());
  }
  validate(s);
  return s;
}

void validate(const Scenario& s) {
  const auto& p = s.params;
  auto fail = [&](const std::string& what) { throw InvalidInput("scenario '" + s.name + "': " + what); };
  if (s.name.empty()) fail("name is empty");
  if (s.repetitions < 1) fail("repetitions must be >= 1");
  if (s.replans < 1) fail("replans must be >= 1");
  if (!(p.epsilon >= 0.0)) fail("epsilon must be >= 0");
  if (!(p.sigma_obs > 0.0) || !(p.sigma_env > 0.0)) fail("sigmas must be > 0");
  if (!(p.t_max > 0.0)) fail("t_max must be > 0");
  if (p.segments < 1) fail("segments must be >= 1");
  if (!(p.step > 0.0)) fail("step must be > 0");
  if (!(p.lambda >= 0.0)) fail("lambda must be >= 0");
  if (p.mc_samples < 1) fail("mc_samples must be >= 1");
  if (!(p.qc > 0.0)) fail("qc must be > 0");
  if (!(p.body_radius > 0.0)) fail("body_radius must be > 0");
  if (!(p.fmm_beta >= 0.0)) fail("fmm_beta must be >= 0");
  if (p.rrt_max_samples < 1) fail("rrt_max_samples must be >= 1");
  if (!(p.rrt_goal_bias >= 0.0 && p.rrt_goal_bias < 1.0)) fail("rrt_goal_bias must be in [0, 1)");
  if (!(p.timeout_s > 0.0)) fail("timeout_s must be > 0");
  if (s.currents) {
    if (!(s.currents->max_current_speed > 0.0)) fail("max_current_speed must be > 0");
    for (const auto& v : s.currents->vortices) {
      if (!(v.core_radius > 0.0)) fail("vortex core_radius must be > 0");
    }
  }
}

Scenario load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open scenario " + file.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidInput(file.string() + ": " + e.what());
  }
  Scenario s = scenario_from_json(j, file.parent_path());
  if (!std::filesystem::exists(s.map_file)) {
    throw InvalidInput(file.string() + ": map file " + s.map_file.string() + " does not exist");
  }
  return s;
}

void save_scenario(const Scenario& s, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot write " + file.string());
  out << to_json(s).dump(2) << '\n';
}

}  // namespace usvplan::bench
