#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "usvplan/graph/factor_graph.hpp"
#include "usvplan/optimizer/lm.hpp"
#include "usvplan/optimizer/path_tools.hpp"

namespace usvplan::optimizer {

struct PlannerParams {
  graph::GraphParams graph;
  double total_time = 2.0;     // T_max, seconds
  int segments = 5;            // N
  double qc = 10.0;          // isotropic power-spectral density
  double body_radius = 3.0;    // single-disc hull model
  int output_resolution = 64;  // dense states per segment
  LmSettings lm;
};

struct ReplanDiagnostics {
  int iteration = 0;
  double length = 0.0;
  double objective = 0.0;
  std::vector<int> interpolation_counts;
  bool collision_free = false;
  double min_clearance = 0.0;
  bool accepted = false;
  int lm_iterations = 0;
  std::string failure;  // non-empty when the solve threw
};

struct PlanResult {
  std::string planner;
  std::vector<Vector> support_states;
  DensePath path;
  double length = 0.0;
  bool collision_free = false;
  double min_clearance = 0.0;
  double mean_energy_rate = 0.0;
  std::vector<ReplanDiagnostics> replans;
  double duration_ms = 0.0;

  // Lengths of the accepted paths in acceptance order.
  std::vector<double> accepted_lengths() const;
};

gp::PlannerState make_endpoint(const Point2& position, const Point2& velocity);

// Start/goal states carrying the straight-line velocity for the given horizon.
std::pair<gp::PlannerState, gp::PlannerState> endpoints(const Point2& start, const Point2& goal,
                                                        double total_time);

// Replanning loop: every iteration rebuilds a Monte-Carlo factor graph with a
// derived seed, solves it from the straight line, and replaces the incumbent
// only with a strictly shorter collision-free path.
PlanResult mc_gpmp2_star(const Point2& start, const Point2& goal,
                         std::shared_ptr<const graph::PlanningFields> fields,
                         const PlannerParams& params, int replans, std::uint64_t seed);

// Same as above but precomputes the SDF and environment field first.
PlanResult mc_gpmp2_star(const Point2& start, const Point2& goal, fields::OccupancyGrid grid,
                         const fields::VortexSpec* vortices, const PlannerParams& params,
                         int replans, std::uint64_t seed);

// Single solve with a fixed interpolation count per segment.
PlanResult gpmp2_plan(const Point2& start, const Point2& goal,
                      std::shared_ptr<const graph::PlanningFields> fields,
                      const PlannerParams& params);

// Throws InvalidInput unless p lies inside the map on a free cell.
void require_free(const fields::OccupancyGrid& grid, const Point2& p, const char* what);

}  // namespace usvplan::optimizer
