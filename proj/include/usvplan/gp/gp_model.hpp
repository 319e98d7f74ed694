#pragma once

#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace usvplan::gp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Trajectory variable: position and velocity stacked as (r, v), size 2*dof.
class PlannerState {
 public:
  PlannerState() = default;
  PlannerState(const Vector& position, const Vector& velocity);
  explicit PlannerState(Vector stacked);

  int dof() const { return static_cast<int>(x_.size() / 2); }
  auto position() const { return x_.head(dof()); }
  auto velocity() const { return x_.tail(dof()); }
  const Vector& stacked() const { return x_; }

 private:
  Vector x_;
};

// Constant-velocity transition [[I, (t-s)I], [0, I]]. Requires t >= s.
Matrix phi(double t, double s, int dof);

// Process-noise covariance accumulated over (t_a, t_b] for the white-noise
// acceleration prior. Requires t_b > t_a.
Matrix q_between(double t_a, double t_b, const Matrix& qc);

struct InterpolationCoeffs {
  Matrix lambda;  // weight on the left support state
  Matrix psi;     // weight on the right support state
};

InterpolationCoeffs interpolation_coeffs(double t_i, double t_next, double tau, const Matrix& qc);

// Whitened prior residual between consecutive support states together with
// its Jacobians with respect to both states.
struct PriorResidual {
  Vector residual;
  Matrix jac_first;
  Matrix jac_second;
};

class GpModel {
 public:
  GpModel(Matrix qc, std::vector<double> timestamps);

  // Uniform spacing t_i = i * total_time / segments with Qc = qc * I.
  static GpModel uniform(int dof, double qc, double total_time, int segments);

  int dof() const { return static_cast<int>(qc_.rows()); }
  int state_dim() const { return 2 * dof(); }
  int segment_count() const { return static_cast<int>(times_.size()) - 1; }
  int support_count() const { return static_cast<int>(times_.size()); }
  double time(int i) const { return times_[i]; }
  double total_time() const { return times_.back() - times_.front(); }
  const std::vector<double>& timestamps() const { return times_; }
  const Matrix& qc() const { return qc_; }

  // Lower-triangular inverse Cholesky factor W with W^T W = Q_{i,i+1}^{-1}.
  const Matrix& whitening(int segment) const { return whitening_[segment]; }
  // Phi(t_{i+1}, t_i) of a segment.
  const Matrix& transition(int segment) const { return transition_[segment]; }

  InterpolationCoeffs coeffs(int segment, double tau) const;
  PlannerState interpolate(int segment, const PlannerState& left, const PlannerState& right,
                           double tau) const;

 private:
  Matrix qc_;
  std::vector<double> times_;
  std::vector<Matrix> whitening_;
  std::vector<Matrix> transition_;
};

PriorResidual gp_prior_error(const Vector& first, const Vector& second, const GpModel& model,
                             int segment);

// Interpolated state between two support states; tau must lie in
// [t_i, t_{i+1}] of the given segment.
PlannerState interpolate(const PlannerState& left, const PlannerState& right, double tau,
                         const GpModel& model, int segment);

}  // namespace usvplan::gp
