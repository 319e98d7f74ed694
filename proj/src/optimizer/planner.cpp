#include "usvplan/optimizer/planner.hpp"

#include <chrono>
#include <limits>

#include "usvplan/random.hpp"

namespace usvplan::optimizer {

std::vector<double> PlanResult::accepted_lengths() const {
  std::vector<double> out;
  for (const auto& r : replans) {
    if (r.accepted) out.push_back(r.length);
  }
  return out;
}

gp::PlannerState make_endpoint(const Point2& position, const Point2& velocity) {
  return gp::PlannerState(Vector(position), Vector(velocity));
}

std::pair<gp::PlannerState, gp::PlannerState> endpoints(const Point2& start, const Point2& goal,
                                                        double total_time) {
  const Point2 v = (goal - start) / total_time;
  return {make_endpoint(start, v), make_endpoint(goal, v)};
}

void require_free(const fields::OccupancyGrid& grid, const Point2& p, const char* what) {
  const auto cell = grid.geometry().cell_at(p);
  if (!cell) throw InvalidInput(std::string(what) + " lies outside the map");
  if (grid.occupied(cell->x, cell->y)) throw InvalidInput(std::string(what) + " lies inside an obstacle");
}

namespace {

struct Candidate {
  std::vector<Vector> states;
  DensePath path;
  double length = 0.0;
  double objective = 0.0;
  CollisionReport collision;
};

Candidate solve_once(const graph::FactorGraph& g, const std::vector<Vector>& init,
                     const PlannerParams& params, int& lm_iterations) {
  GraphSolve solve = lm_solve(g, init, params.lm);
  lm_iterations = solve.iterations;
  Candidate c;
  c.states = std::move(solve.states);
  c.objective = solve.cost_trace.back();
  c.path = densify(c.states, g.model(), params.output_resolution);
  c.length = path_length(c.path);
  c.collision = collision_check(c.path, g.fields().sdf, g.body());
  return c;
}

void fill_result(PlanResult& result, const Candidate& c, const graph::PlanningFields& fields) {
  result.support_states = c.states;
  result.path = c.path;
  result.length = c.length;
  result.collision_free = c.collision.collision_free;
  result.min_clearance = c.collision.min_clearance;
  result.mean_energy_rate = mean_along(positions(c.path), fields.environment.energy_rate());
}

void check_inputs(const Point2& start, const Point2& goal, const graph::PlanningFields& fields,
                  const PlannerParams& params) {
  require_free(fields.grid, start, "start");
  require_free(fields.grid, goal, "goal");
  if (params.output_resolution < 1) throw InvalidInput("output resolution must be >= 1");
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

PlanResult mc_gpmp2_star(const Point2& start, const Point2& goal,
                         std::shared_ptr<const graph::PlanningFields> fields,
                         const PlannerParams& params, int replans, std::uint64_t seed) {
  const auto clock = std::chrono::steady_clock::now();
  if (!fields) throw InvalidInput("planner needs precomputed fields");
  if (replans < 1) throw InvalidInput("replanning iteration count must be >= 1");
  check_inputs(start, goal, *fields, params);

  const auto model = gp::GpModel::uniform(2, params.qc, params.total_time, params.segments);
  const auto body = graph::RobotBodyModel::disc(params.body_radius);
  const auto [s, g] = endpoints(start, goal, params.total_time);
  const auto init = graph::straight_line(model, s, g);

  PlanResult result;
  result.planner = "mc-gpmp2*";
  bool have_incumbent = false;
  double incumbent_length = std::numeric_limits<double>::infinity();
  bool have_fallback = false;
  Candidate fallback;
  std::string last_failure;

  for (int i = 1; i <= replans; ++i) {
    ReplanDiagnostics diag;
    diag.iteration = i;
    const auto graph = graph::build_factor_graph_mc(model, fields, body, params.graph, s, g,
                                                    derive_seed(seed, static_cast<std::uint64_t>(i)));
    diag.interpolation_counts = graph.interpolation_counts();
    try {
      Candidate c = solve_once(graph, init, params, diag.lm_iterations);
      diag.length = c.length;
      diag.objective = c.objective;
      diag.collision_free = c.collision.collision_free;
      diag.min_clearance = c.collision.min_clearance;
      // Rejected when not strictly shorter than the incumbent or colliding.
      if (c.collision.collision_free && (!have_incumbent || c.length < incumbent_length)) {
        diag.accepted = true;
        have_incumbent = true;
        incumbent_length = c.length;
        fill_result(result, c, *fields);
      } else if (!have_incumbent && (!have_fallback || c.objective < fallback.objective)) {
        have_fallback = true;
        fallback = std::move(c);
      }
    } catch (const NumericConditioning& e) {
      diag.failure = e.what();
      last_failure = e.what();
    }
    result.replans.push_back(std::move(diag));
  }

  if (!have_incumbent) {
    if (!have_fallback) throw PlanningFailed("planning-failed", "every replan failed: " + last_failure);
    fill_result(result, fallback, *fields);
  }
  result.duration_ms = elapsed_ms(clock);
  return result;
}

PlanResult mc_gpmp2_star(const Point2& start, const Point2& goal, fields::OccupancyGrid grid,
                         const fields::VortexSpec* vortices, const PlannerParams& params,
                         int replans, std::uint64_t seed) {
  // Bad endpoints are rejected before spending time on the fields.
  require_free(grid, start, "start");
  require_free(grid, goal, "goal");
  return mc_gpmp2_star(start, goal, graph::PlanningFields::build(std::move(grid), vortices), params,
                       replans, seed);
}

PlanResult gpmp2_plan(const Point2& start, const Point2& goal,
                      std::shared_ptr<const graph::PlanningFields> fields,
                      const PlannerParams& params) {
  PlannerParams fixed = params;
  fixed.graph.policy = graph::InterpolationPolicy::Fixed;
  PlanResult r = mc_gpmp2_star(start, goal, std::move(fields), fixed, 1, 0);
  r.planner = "gpmp2";
  return r;
}

}  // namespace usvplan::optimizer
