#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "usvplan/graph/factors.hpp"
#include "usvplan/graph/monte_carlo.hpp"

namespace usvplan::graph {

enum class FactorKind { Prior, GpPrior, Obstacle, InterpObstacle, Environment, InterpEnvironment };

std::string_view to_string(FactorKind kind);

// How many interpolated states each segment receives.
enum class InterpolationPolicy {
  MonteCarlo,  // N_j = round(lambda * P_obs), P_obs sampled
  Traversal,   // N_j = round(lambda * P_obs), P_obs from exhaustive cell scan
  Fixed,       // N_j = fixed_interpolation for every segment
};

struct GraphParams {
  double epsilon = 20.0;        // safety distance, meters
  double sigma_obs = 0.05;
  double sigma_env = 0.005;
  double lambda = 10.0;         // N_j scaling term
  int max_interpolation = 50;   // cap on N_j per segment
  int mc_samples = 64;          // N_spl per segment
  InterpolationPolicy policy = InterpolationPolicy::MonteCarlo;
  int fixed_interpolation = 10;
  double prior_position_var = 1e-8;
  double prior_velocity_var = 1e-2;
};

struct Factor {
  FactorKind kind = FactorKind::Prior;
  int first = 0;        // support-state index
  int second = -1;      // second support state (GpPrior / interpolated kinds)
  int segment = -1;
  double tau = 0.0;     // interpolation time for interpolated kinds
  double sigma = 1.0;   // sigma_obs or sigma_env
  Vector target;        // Prior mean
  Vector prior_sigmas;  // Prior per-component standard deviations
  Matrix lambda;        // interpolation weights on `first`
  Matrix psi;           // interpolation weights on `second`
};

// Whitened residual of one factor and its Jacobian blocks per support state.
struct Linearization {
  Vector residual;
  std::vector<std::pair<int, Matrix>> blocks;
};

class FactorGraph {
 public:
  FactorGraph(gp::GpModel model, std::shared_ptr<const PlanningFields> fields, RobotBodyModel body,
              GraphParams params);

  const gp::GpModel& model() const { return model_; }
  const PlanningFields& fields() const { return *fields_; }
  const RobotBodyModel& body() const { return body_; }
  const GraphParams& params() const { return params_; }

  int support_count() const { return model_.support_count(); }
  int state_dim() const { return model_.state_dim(); }
  const std::vector<Factor>& factors() const { return factors_; }
  int count(FactorKind kind) const;

  // Per-segment interpolated-state counts and the estimates behind them.
  const std::vector<int>& interpolation_counts() const { return interp_counts_; }
  const std::vector<McEstimate>& estimates() const { return estimates_; }
  bool interpolation_capped() const { return interp_capped_; }

  void add(Factor factor) { factors_.push_back(std::move(factor)); }
  void set_segment_info(std::vector<int> counts, std::vector<McEstimate> estimates, bool capped);

  Linearization linearize(const Factor& factor, const std::vector<Vector>& states,
                          bool with_jacobian = true) const;

  // 1/2 * sum of squared whitened residuals. Throws on arity mismatch.
  double objective(const std::vector<Vector>& states) const;

  // Diagnostic structure dump (factor kinds, states, tau, per-segment N_j).
  std::string dump_json() const;

 private:
  void check_states(const std::vector<Vector>& states) const;

  gp::GpModel model_;
  std::shared_ptr<const PlanningFields> fields_;
  RobotBodyModel body_;
  GraphParams params_;
  std::vector<Factor> factors_;
  std::vector<int> interp_counts_;
  std::vector<McEstimate> estimates_;
  bool interp_capped_ = false;
};

// Support states on the constant-velocity straight line from start to goal.
std::vector<Vector> straight_line(const gp::GpModel& model, const gp::PlannerState& start,
                                  const gp::PlannerState& goal);

// Builds the Monte-Carlo factor graph: start/goal priors, then per segment
// an obstacle and environment factor on its end state, the GP prior, and
// N_j = round(lambda * P_obs) interpolated obstacle/environment pairs at
// uniformly spaced interior times. P_obs is estimated over the
// epsilon-inflated bounding box of the segment's straight-line endpoints.
FactorGraph build_factor_graph_mc(const gp::GpModel& model,
                                  std::shared_ptr<const PlanningFields> fields,
                                  const RobotBodyModel& body, const GraphParams& params,
                                  const gp::PlannerState& start, const gp::PlannerState& goal,
                                  std::uint64_t seed);

}  // namespace usvplan::graph
