#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "usvplan/bench/benchmark.hpp"
#include "usvplan/sim/mission.hpp"

namespace usvplan::bench {

struct OverlayPath {
  std::string label;
  std::vector<Point2> points;
  std::string color = "#d62728";
};

// Map overlay: obstacles, optional current quiver every `quiver_step` cells,
// paths, start and goal markers.
std::string overlay_svg(const fields::OccupancyGrid& grid, const fields::EnvironmentField* currents,
                        const std::vector<OverlayPath>& paths, const Point2& start,
                        const Point2& goal, int quiver_step = 25);

// Stacked panels: cross-track error, desired vs measured heading, desired vs
// measured speed.
std::string mission_svg(const sim::MissionLog& log);

// One row per replanning iteration:
// "iteration,length,objective,collision_free,min_clearance,accepted,lm_iterations,interpolation_counts,failure"
// where interpolation_counts is ';'-separated.
std::string replan_csv(const optimizer::PlanResult& result);
// Accepted length against iteration.
std::string replan_svg(const optimizer::PlanResult& result);

void write_text(const std::string& text, const std::filesystem::path& file);

// File-system friendly planner tag ("mc-gpmp2*" -> "mc-gpmp2star").
std::string file_tag(const std::string& planner);

// For every report row with a successful run: "<scenario>_<planner>.svg"
// overlay of its first successful path plus the same path as
// "<scenario>_<planner>.csv". Returns the written files.
std::vector<std::filesystem::path> emit_plots(const BenchReport& report,
                                              const std::vector<Scenario>& scenarios,
                                              const std::filesystem::path& out_dir);

}  // namespace usvplan::bench
