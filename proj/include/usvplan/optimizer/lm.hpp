#pragma once

#include <string>
#include <vector>

#include "usvplan/error.hpp"
#include "usvplan/graph/factor_graph.hpp"

namespace usvplan::optimizer {

using gp::Matrix;
using gp::Vector;

struct LmSettings {
  double initial_damping = 1e-4;
  double damping_up = 10.0;
  double damping_down = 10.0;
  double max_damping = 1e12;
  int max_iterations = 100;
  double absolute_tolerance = 1e-20;  // stop once the cost drops below this
  double relative_tolerance = 1e-6;   // stop when an accepted step improves less than this

  void validate() const;
};

// Nonlinear least-squares problem in a flat parameter vector. `linearize`
// returns the cost 1/2 |r|^2 and fills the Gauss-Newton system J^T J, J^T r.
class LeastSquaresProblem {
 public:
  virtual ~LeastSquaresProblem() = default;
  virtual int dimension() const = 0;
  virtual double cost(const Vector& x) const = 0;
  virtual double linearize(const Vector& x, Matrix& hessian, Vector& gradient) const = 0;
};

struct LmResult {
  Vector x;
  std::vector<double> cost_trace;  // initial cost followed by every accepted step
  int iterations = 0;              // accepted steps
  std::string termination;
};

// Raised when the damped normal equations cannot be factored even at the
// damping limit. Carries the last accepted iterate.
class LmFailure : public NumericConditioning {
 public:
  LmFailure(const std::string& what, Vector last) : NumericConditioning(what), last_(std::move(last)) {}
  const Vector& last_iterate() const { return last_; }

 private:
  Vector last_;
};

LmResult lm_solve(const LeastSquaresProblem& problem, Vector initial, const LmSettings& settings);

struct GraphSolve {
  std::vector<Vector> states;
  std::vector<double> cost_trace;
  int iterations = 0;
  std::string termination;
};

// Adapter over the factor graph; support states are stacked in index order.
class GraphProblem : public LeastSquaresProblem {
 public:
  explicit GraphProblem(const graph::FactorGraph& graph) : graph_(graph) {}
  int dimension() const override { return graph_.support_count() * graph_.state_dim(); }
  double cost(const Vector& x) const override;
  double linearize(const Vector& x, Matrix& hessian, Vector& gradient) const override;

  std::vector<Vector> unstack(const Vector& x) const;
  Vector stack(const std::vector<Vector>& states) const;

 private:
  const graph::FactorGraph& graph_;
};

GraphSolve lm_solve(const graph::FactorGraph& graph, const std::vector<Vector>& initial,
                    const LmSettings& settings);

}  // namespace usvplan::optimizer
