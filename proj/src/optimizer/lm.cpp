#include "usvplan/optimizer/lm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>

namespace usvplan::optimizer {

void LmSettings::validate() const {
  if (!(initial_damping > 0.0)) throw InvalidInput("LM damping must be positive");
  if (!(damping_up > 1.0) || !(damping_down > 1.0)) {
    throw InvalidInput("LM damping multipliers must exceed 1");
  }
  if (!(absolute_tolerance > 0.0) || !(relative_tolerance > 0.0)) {
    throw InvalidInput("LM tolerances must be positive");
  }
  if (max_iterations < 1) throw InvalidInput("LM needs at least one iteration");
}

LmResult lm_solve(const LeastSquaresProblem& problem, Vector initial, const LmSettings& settings) {
  settings.validate();
  const int n = problem.dimension();
  if (initial.size() != n) throw InvalidInput("initial iterate has the wrong dimension");
  if (!initial.allFinite()) throw InvalidInput("initial iterate must be finite");

  LmResult result;
  result.x = std::move(initial);
  Matrix hessian(n, n);
  Vector gradient(n);
  double cost = problem.linearize(result.x, hessian, gradient);
  result.cost_trace.push_back(cost);

  double damping = settings.initial_damping;
  const Matrix identity = Matrix::Identity(n, n);

  while (true) {
    if (cost <= settings.absolute_tolerance) {
      result.termination = "absolute tolerance";
      break;
    }
    if (result.iterations >= settings.max_iterations) {
      result.termination = "iteration limit";
      break;
    }

    bool accepted = false;
    bool any_factored = false;
    while (damping <= settings.max_damping) {
      Eigen::LLT<Matrix> llt(hessian + damping * identity);
      if (llt.info() != Eigen::Success) {
        damping *= settings.damping_up;
        continue;
      }
      any_factored = true;
      const Vector step = llt.solve(-gradient);
      const Vector candidate = result.x + step;
      const double candidate_cost = candidate.allFinite() ? problem.cost(candidate)
                                                          : std::numeric_limits<double>::infinity();
      if (candidate_cost < cost) {
        result.x = candidate;
        accepted = true;
        damping = std::max(damping / settings.damping_down, 1e-300);
        const double previous = cost;
        cost = problem.linearize(result.x, hessian, gradient);
        result.cost_trace.push_back(cost);
        ++result.iterations;
        if ((previous - cost) <= settings.relative_tolerance * previous) {
          result.termination = "relative tolerance";
          return result;
        }
        break;
      }
      damping *= settings.damping_up;
    }
    if (!accepted) {
      if (!any_factored) {
        throw LmFailure("damped normal equations could not be factored", result.x);
      }
      result.termination = "damping limit";
      break;
    }
  }
  return result;
}

std::vector<Vector> GraphProblem::unstack(const Vector& x) const {
  const int d = graph_.state_dim();
  std::vector<Vector> states(graph_.support_count());
  for (int i = 0; i < graph_.support_count(); ++i) states[i] = x.segment(i * d, d);
  return states;
}

Vector GraphProblem::stack(const std::vector<Vector>& states) const {
  const int d = graph_.state_dim();
  Vector x(dimension());
  for (int i = 0; i < graph_.support_count(); ++i) x.segment(i * d, d) = states[i];
  return x;
}

double GraphProblem::cost(const Vector& x) const { return graph_.objective(unstack(x)); }

double GraphProblem::linearize(const Vector& x, Matrix& hessian, Vector& gradient) const {
  const int d = graph_.state_dim();
  const auto states = unstack(x);
  hessian.setZero(dimension(), dimension());
  gradient.setZero(dimension());
  double cost = 0.0;
  for (const auto& f : graph_.factors()) {
    const auto lin = graph_.linearize(f, states, true);
    cost += 0.5 * lin.residual.squaredNorm();
    // Inactive hinges contribute nothing.
    bool all_zero = true;
    for (const auto& [a, ja] : lin.blocks) all_zero = all_zero && (ja.array() == 0.0).all();
    if (all_zero) continue;
    for (const auto& [a, ja] : lin.blocks) {
      gradient.segment(a * d, d).noalias() += ja.transpose() * lin.residual;
      for (const auto& [b, jb] : lin.blocks) {
        hessian.block(a * d, b * d, d, d).noalias() += ja.transpose() * jb;
      }
    }
  }
  return cost;
}

GraphSolve lm_solve(const graph::FactorGraph& graph, const std::vector<Vector>& initial,
                    const LmSettings& settings) {
  GraphProblem problem(graph);
  if (static_cast<int>(initial.size()) != graph.support_count()) {
    throw InvalidInput("initial states do not match the graph's support count");
  }
  for (const auto& s : initial) {
    if (s.size() != graph.state_dim()) throw InvalidInput("initial state has the wrong dimension");
  }
  LmResult r = lm_solve(problem, problem.stack(initial), settings);
  return GraphSolve{problem.unstack(r.x), std::move(r.cost_trace), r.iterations,
                    std::move(r.termination)};
}

}  // namespace usvplan::optimizer
