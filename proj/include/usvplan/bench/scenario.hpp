#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "usvplan/fields/environment.hpp"
#include "usvplan/fields/grid.hpp"

namespace usvplan::bench {

using fields::Point2;

// Planner parameters shared by every planner of a scenario.
struct ScenarioParams {
  double epsilon = 20.0;    // safety distance, pixels
  double sigma_obs = 0.05;
  double sigma_env = 0.005;
  double t_max = 2.0;       // trajectory horizon, s
  int segments = 5;         // support segments N
  double step = 10.0;       // lattice / extension step l, pixels
  double lambda = 10.0;
  int mc_samples = 64;
  double qc = 10.0;
  double body_radius = 3.0;
  int fixed_interpolation = 10;
  double fmm_beta = 5.0;
  double fmm_block = 0.95;  // energy rate at or above which FMM treats a cell as closed
  int rrt_max_samples = 200000;
  double rrt_goal_bias = 0.05;
  double timeout_s = 30.0;
};

struct Scenario {
  std::string name;
  std::filesystem::path map_file;  // resolved against the scenario file's directory
  Point2 start = Point2::Zero();
  Point2 goal = Point2::Zero();
  ScenarioParams params;
  std::optional<fields::VortexSpec> currents;
  int replans = 5;
  std::uint64_t seed = 1;
  int repetitions = 5;
};

nlohmann::json to_json(const Scenario& s);
// `base_dir` resolves a relative map path. Throws InvalidInput on schema errors.
Scenario scenario_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

// Loads and validates, including that the map file exists.
Scenario load_scenario(const std::filesystem::path& file);
void save_scenario(const Scenario& s, const std::filesystem::path& file);

// Throws InvalidInput when fields are out of range.
void validate(const Scenario& s);

}  // namespace usvplan::bench
