#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "usvplan/bench/scenario.hpp"
#include "usvplan/optimizer/planner.hpp"
#include "usvplan/sim/mission.hpp"

namespace usvplan::bench {

// Planner identifiers accepted by run_planner and the CLI.
const std::vector<std::string>& planner_names();

// Throws InvalidInput for unknown names.
void check_planner(const std::string& planner);

optimizer::PlannerParams planner_params(const Scenario& s);

std::shared_ptr<const graph::PlanningFields> build_fields(const Scenario& s);
std::shared_ptr<const graph::PlanningFields> build_fields(const Scenario& s,
                                                          fields::OccupancyGrid grid);

// One planner call. Throws PlanningFailed when the planner gives up or exceeds
// `timeout_s` (<= 0 uses the scenario's timeout). The seed only matters to the
// sampling planners.
optimizer::PlanResult run_planner(const std::string& planner, const Scenario& s,
                                  std::shared_ptr<const graph::PlanningFields> fields,
                                  std::uint64_t seed, double timeout_s = 0.0);

struct RunRecord {
  int repetition = 0;
  std::uint64_t seed = 0;
  bool success = false;
  std::string failure;
  double time_ms = 0.0;
  double length = 0.0;
  double energy_rate_pct = 0.0;
  double smoothness = 0.0;  // mean absolute turn angle, rad
  double min_clearance = 0.0;
  std::shared_ptr<const optimizer::PlanResult> result;  // null on failure
};

struct Stat {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct BenchRow {
  std::string scenario;
  std::string planner;
  int successes = 0;
  int failures = 0;
  // Over successful runs only; all zero when none succeeded.
  Stat time_ms;
  Stat length;
  Stat energy_rate_pct;
  Stat smoothness;
  std::vector<RunRecord> runs;

  bool success() const { return failures == 0 && successes > 0; }
  // First successful run, or null.
  const RunRecord* first_success() const;
};

struct ScenarioTiming {
  std::string scenario;
  double field_ms = 0.0;  // SDF and environment precomputation
};

struct BenchReport {
  std::vector<BenchRow> rows;  // scenario-major, planner order as requested
  std::vector<ScenarioTiming> fields;

  const BenchRow* find(const std::string& scenario, const std::string& planner) const;

  // Timing fields are left out when include_timing is false so that reports
  // from repeated runs compare byte for byte.
  nlohmann::json to_json(bool include_timing = true) const;
  std::string csv(bool include_timing = true) const;
};

struct BenchOptions {
  std::vector<std::string> planners = planner_names();
  int jobs = 1;            // worker threads; <= 0 uses the hardware count
  double timeout_s = 0.0;  // <= 0 keeps each scenario's own timeout
  int repetitions = 0;     // > 0 overrides the scenario setting
};

// Seed of repetition `rep` (0-based) for a scenario base seed.
inline std::uint64_t repetition_seed(std::uint64_t base, int rep) {
  return base + static_cast<std::uint64_t>(rep);
}

// Runs every (scenario, planner, repetition). Scenario errors (bad files,
// blocked endpoints, unknown planners) abort before anything runs.
BenchReport run_benchmark(const std::vector<Scenario>& scenarios, const BenchOptions& options = {});

// Thins a dense path into guidance waypoints at least `spacing` apart, keeping
// both ends and the timing.
sim::MissionPath to_mission_path(const optimizer::DensePath& path, double spacing = 5.0);

}  // namespace usvplan::bench
