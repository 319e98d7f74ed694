#include "usvplan/graph/factor_graph.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "usvplan/error.hpp"
#include "usvplan/random.hpp"

namespace usvplan::graph {

std::string_view to_string(FactorKind kind) {
  switch (kind) {
    case FactorKind::Prior: return "prior";
    case FactorKind::GpPrior: return "gp_prior";
    case FactorKind::Obstacle: return "obstacle";
    case FactorKind::InterpObstacle: return "interp_obstacle";
    case FactorKind::Environment: return "environment";
    case FactorKind::InterpEnvironment: return "interp_environment";
  }
  return "unknown";
}

FactorGraph::FactorGraph(gp::GpModel model, std::shared_ptr<const PlanningFields> fields,
                         RobotBodyModel body, GraphParams params)
    : model_(std::move(model)),
      fields_(std::move(fields)),
      body_(std::move(body)),
      params_(params) {
  if (!fields_) throw InvalidInput("factor graph needs planning fields");
  if (model_.dof() != 2) throw InvalidInput("factor graph fields are planar; dof must be 2");
  if (!(params_.sigma_obs > 0.0) || !(params_.sigma_env > 0.0)) {
    throw InvalidInput("factor weights must be positive");
  }
}

int FactorGraph::count(FactorKind kind) const {
  return static_cast<int>(std::count_if(factors_.begin(), factors_.end(),
                                        [kind](const Factor& f) { return f.kind == kind; }));
}

void FactorGraph::set_segment_info(std::vector<int> counts, std::vector<McEstimate> estimates,
                                   bool capped) {
  interp_counts_ = std::move(counts);
  estimates_ = std::move(estimates);
  interp_capped_ = capped;
}

void FactorGraph::check_states(const std::vector<Vector>& states) const {
  if (static_cast<int>(states.size()) != support_count()) {
    throw InvalidInput("expected " + std::to_string(support_count()) + " support states, got " +
                       std::to_string(states.size()));
  }
  for (const auto& s : states) {
    if (s.size() != state_dim()) throw InvalidInput("support state has the wrong dimension");
  }
}

Linearization FactorGraph::linearize(const Factor& f, const std::vector<Vector>& states,
                                     bool with_jacobian) const {
  Linearization out;
  if (with_jacobian) out.blocks.reserve(2);
  // Clear of every hinge: zero residual and zero Jacobian, so no blocks.
  auto hinge_inactive = [&](const Vector& x) {
    const Point2 p = x.head<2>();
    for (int j = 0; j < body_.size(); ++j) {
      if (params_.epsilon + body_.circles()[j].radius - fields_->sdf.value(body_.center(j, p)) > 0.0) return false;
    }
    return true;
  };
  auto energy_flat_zero = [&](const Vector& x) {
    const Point2 p = x.head<2>();
    for (int j = 0; j < body_.size(); ++j) {
      const auto e = fields_->environment.energy_rate().sample(body_.center(j, p));
      if (e.value != 0.0 || e.gradient.x() != 0.0 || e.gradient.y() != 0.0) return false;
    }
    return true;
  };
  auto interpolated = [&] { return Vector(f.lambda * states[f.first] + f.psi * states[f.second]); };
  auto chain = [&](const Matrix& j) {
    out.blocks.emplace_back(f.first, j * f.lambda);
    out.blocks.emplace_back(f.second, j * f.psi);
  };

  switch (f.kind) {
    case FactorKind::Prior: {
      const Vector inv = f.prior_sigmas.cwiseInverse();
      out.residual = (states[f.first] - f.target).cwiseProduct(inv);
      if (with_jacobian) out.blocks.emplace_back(f.first, Matrix(inv.asDiagonal()));
      break;
    }
    case FactorKind::GpPrior: {
      auto r = gp::gp_prior_error(states[f.first], states[f.second], model_, f.segment);
      out.residual = std::move(r.residual);
      if (with_jacobian) {
        out.blocks.emplace_back(f.first, std::move(r.jac_first));
        out.blocks.emplace_back(f.second, std::move(r.jac_second));
      }
      break;
    }
    case FactorKind::Obstacle: {
      if (hinge_inactive(states[f.first])) {
        out.residual = Vector::Zero(body_.size());
        break;
      }
      auto r = obstacle_error(states[f.first], fields_->sdf, body_, params_.epsilon, f.sigma);
      out.residual = std::move(r.residual);
      if (with_jacobian) out.blocks.emplace_back(f.first, std::move(r.jacobian));
      break;
    }
    case FactorKind::Environment: {
      const Vector x = states[f.first];
      if (energy_flat_zero(x)) {
        out.residual = Vector::Zero(body_.size());
        break;
      }
      auto r = environment_error(x, fields_->environment.energy_rate(), body_, f.sigma);
      out.residual = std::move(r.residual);
      if (with_jacobian) out.blocks.emplace_back(f.first, std::move(r.jacobian));
      break;
    }
    case FactorKind::InterpObstacle: {
      const Vector x = interpolated();
      if (hinge_inactive(x)) {
        out.residual = Vector::Zero(body_.size());
        break;
      }
      auto r = obstacle_error(x, fields_->sdf, body_, params_.epsilon, f.sigma);
      out.residual = std::move(r.residual);
      if (with_jacobian) chain(r.jacobian);
      break;
    }
    case FactorKind::InterpEnvironment: {
      const Vector x = interpolated();
      if (energy_flat_zero(x)) {
        out.residual = Vector::Zero(body_.size());
        break;
      }
      auto r = environment_error(x, fields_->environment.energy_rate(), body_, f.sigma);
      out.residual = std::move(r.residual);
      if (with_jacobian) chain(r.jacobian);
      break;
    }
  }
  return out;
}

double FactorGraph::objective(const std::vector<Vector>& states) const {
  check_states(states);
  double total = 0.0;
  for (const auto& f : factors_) total += 0.5 * linearize(f, states, false).residual.squaredNorm();
  return total;
}

std::string FactorGraph::dump_json() const {
  nlohmann::json j;
  j["support_count"] = support_count();
  j["interpolation_capped"] = interp_capped_;
  auto& segs = j["segments"] = nlohmann::json::array();
  for (std::size_t i = 0; i < interp_counts_.size(); ++i) {
    nlohmann::json s{{"index", i}, {"interpolated", interp_counts_[i]}};
    if (i < estimates_.size()) {
      s["p_obs"] = estimates_[i].p_obs;
      s["samples"] = estimates_[i].samples;
      s["accepted"] = estimates_[i].accepted;
    }
    segs.push_back(std::move(s));
  }
  auto& fs = j["factors"] = nlohmann::json::array();
  for (const auto& f : factors_) {
    nlohmann::json e{{"kind", to_string(f.kind)}};
    auto states = nlohmann::json::array({f.first});
    if (f.second >= 0) states.push_back(f.second);
    e["states"] = std::move(states);
    if (f.kind == FactorKind::InterpObstacle || f.kind == FactorKind::InterpEnvironment) {
      e["tau"] = f.tau;
    }
    fs.push_back(std::move(e));
  }
  return j.dump(2);
}

std::vector<Vector> straight_line(const gp::GpModel& model, const gp::PlannerState& start,
                                  const gp::PlannerState& goal) {
  if (start.dof() != model.dof() || goal.dof() != model.dof()) {
    throw InvalidInput("start/goal dimension does not match the GP model");
  }
  const Vector p0 = start.position();
  const Vector delta = goal.position() - p0;
  const Vector velocity = delta / model.total_time();
  std::vector<Vector> states;
  states.reserve(model.support_count());
  for (int i = 0; i < model.support_count(); ++i) {
    const double s = (model.time(i) - model.time(0)) / model.total_time();
    Vector x(model.state_dim());
    x << p0 + s * delta, velocity;
    states.push_back(std::move(x));
  }
  return states;
}

namespace {

Factor make_prior(int index, const gp::PlannerState& target, const GraphParams& p) {
  const int d = target.dof();
  Factor f;
  f.kind = FactorKind::Prior;
  f.first = index;
  f.target = target.stacked();
  f.prior_sigmas.resize(2 * d);
  f.prior_sigmas.head(d).setConstant(std::sqrt(p.prior_position_var));
  f.prior_sigmas.tail(d).setConstant(std::sqrt(p.prior_velocity_var));
  return f;
}

}  // namespace

FactorGraph build_factor_graph_mc(const gp::GpModel& model,
                                  std::shared_ptr<const PlanningFields> fields,
                                  const RobotBodyModel& body, const GraphParams& params,
                                  const gp::PlannerState& start, const gp::PlannerState& goal,
                                  std::uint64_t seed) {
  if (!(params.lambda >= 0.0)) throw InvalidInput("interpolation scaling must be non-negative");
  if (params.max_interpolation < 0) throw InvalidInput("interpolation cap must be non-negative");
  if (params.policy == InterpolationPolicy::MonteCarlo && params.mc_samples < 1) {
    throw InvalidInput("Monte-Carlo sample count must be positive");
  }
  if (!(params.prior_position_var > 0.0) || !(params.prior_velocity_var > 0.0)) {
    throw InvalidInput("prior variances must be positive");
  }

  FactorGraph graph(model, std::move(fields), body, params);
  const auto& grid = graph.fields().grid;
  const auto line = straight_line(model, start, goal);
  const int segments = model.segment_count();

  std::vector<int> counts(segments, 0);
  std::vector<McEstimate> estimates(segments);
  bool capped = false;

  graph.add(make_prior(0, start, params));
  for (int i = 0; i < segments; ++i) {
    Factor obs;
    obs.kind = FactorKind::Obstacle;
    obs.first = i + 1;
    obs.segment = i;
    obs.sigma = params.sigma_obs;
    graph.add(obs);

    Factor env = obs;
    env.kind = FactorKind::Environment;
    env.sigma = params.sigma_env;
    graph.add(env);

    Factor prior;
    prior.kind = FactorKind::GpPrior;
    prior.first = i;
    prior.second = i + 1;
    prior.segment = i;
    graph.add(prior);

    const Region region = Region::bounding(line[i].head<2>(), line[i + 1].head<2>(), params.epsilon);
    int n = 0;
    switch (params.policy) {
      case InterpolationPolicy::MonteCarlo:
        estimates[i] = mc_estimate_obstacle_space(grid, region, params.mc_samples,
                                                  derive_seed(seed, static_cast<std::uint64_t>(i)));
        n = static_cast<int>(std::lround(params.lambda * estimates[i].p_obs));
        break;
      case InterpolationPolicy::Traversal:
        estimates[i] = traverse_obstacle_space(grid, region);
        n = static_cast<int>(std::lround(params.lambda * estimates[i].p_obs));
        break;
      case InterpolationPolicy::Fixed:
        n = params.fixed_interpolation;
        break;
    }
    if (n > params.max_interpolation) {
      n = params.max_interpolation;
      capped = true;
    }
    counts[i] = n;

    const double t0 = model.time(i);
    const double dt = model.time(i + 1) - t0;
    for (int k = 1; k <= n; ++k) {
      const double tau = t0 + dt * k / (n + 1);
      const auto c = model.coeffs(i, tau);
      Factor io;
      io.kind = FactorKind::InterpObstacle;
      io.first = i;
      io.second = i + 1;
      io.segment = i;
      io.tau = tau;
      io.sigma = params.sigma_obs;
      io.lambda = c.lambda;
      io.psi = c.psi;
      graph.add(io);

      Factor ie = io;
      ie.kind = FactorKind::InterpEnvironment;
      ie.sigma = params.sigma_env;
      graph.add(std::move(ie));
    }
  }
  graph.add(make_prior(segments, goal, params));
  graph.set_segment_info(std::move(counts), std::move(estimates), capped);
  return graph;
}

}  // namespace usvplan::graph
