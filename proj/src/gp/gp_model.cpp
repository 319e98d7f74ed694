#include "usvplan/gp/gp_model.hpp"

#include <cmath>
#include <string>

#include "usvplan/error.hpp"

namespace usvplan::gp {
namespace {

// Closed-form Q for dt >= 0 (zero matrix at dt == 0).
Matrix q_block(double dt, const Matrix& qc) {
  const int d = static_cast<int>(qc.rows());
  Matrix q(2 * d, 2 * d);
  q.topLeftCorner(d, d) = (dt * dt * dt / 3.0) * qc;
  q.topRightCorner(d, d) = (dt * dt / 2.0) * qc;
  q.bottomLeftCorner(d, d) = (dt * dt / 2.0) * qc;
  q.bottomRightCorner(d, d) = dt * qc;
  return q;
}

Matrix inverse_cholesky(const Matrix& cov) {
  Eigen::LLT<Matrix> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw NumericConditioning("covariance block is not positive definite");
  }
  const Matrix l = llt.matrixL();
  return l.triangularView<Eigen::Lower>().solve(Matrix::Identity(cov.rows(), cov.cols()));
}

void check_qc(const Matrix& qc) {
  if (qc.rows() == 0 || qc.rows() != qc.cols()) throw InvalidInput("Qc must be square and non-empty");
  if (!qc.isApprox(qc.transpose())) throw InvalidInput("Qc must be symmetric");
  Eigen::LLT<Matrix> llt(qc);
  if (llt.info() != Eigen::Success) throw InvalidInput("Qc must be positive definite");
}

}  // namespace

PlannerState::PlannerState(const Vector& position, const Vector& velocity) {
  if (position.size() != velocity.size() || position.size() == 0) {
    throw InvalidInput("position and velocity must have the same non-zero dimension");
  }
  x_.resize(2 * position.size());
  x_ << position, velocity;
}

PlannerState::PlannerState(Vector stacked) : x_(std::move(stacked)) {
  if (x_.size() == 0 || x_.size() % 2 != 0) {
    throw InvalidInput("stacked state must have even, non-zero size");
  }
}

Matrix phi(double t, double s, int dof) {
  if (t < s) {
    throw InvalidInterval("state transition requires t >= s (t=" + std::to_string(t) +
                          ", s=" + std::to_string(s) + ")");
  }
  Matrix m = Matrix::Identity(2 * dof, 2 * dof);
  m.topRightCorner(dof, dof).diagonal().setConstant(t - s);
  return m;
}

Matrix q_between(double t_a, double t_b, const Matrix& qc) {
  if (!(t_b > t_a)) {
    throw InvalidInterval("process covariance requires t_b > t_a");
  }
  return q_block(t_b - t_a, qc);
}

InterpolationCoeffs interpolation_coeffs(double t_i, double t_next, double tau, const Matrix& qc) {
  if (!(t_next > t_i)) throw InvalidInterval("segment must have positive duration");
  if (tau < t_i || tau > t_next) {
    throw InvalidInput("interpolation time lies outside its segment");
  }
  const int d = static_cast<int>(qc.rows());
  const int n = 2 * d;
  InterpolationCoeffs c;
  if (tau == t_i) {
    c.lambda = Matrix::Identity(n, n);
    c.psi = Matrix::Zero(n, n);
    return c;
  }
  if (tau == t_next) {
    c.lambda = Matrix::Zero(n, n);
    c.psi = Matrix::Identity(n, n);
    return c;
  }
  const Matrix q_seg = q_block(t_next - t_i, qc);
  const Matrix q_tau = q_block(tau - t_i, qc);
  Eigen::LLT<Matrix> llt(q_seg);
  if (llt.info() != Eigen::Success) throw NumericConditioning("segment covariance is not SPD");
  // psi = Q_{i,tau} Phi(t_{i+1}, tau)^T Q_{i,i+1}^{-1}; Q_{i,i+1} is symmetric.
  const Matrix a = q_tau * phi(t_next, tau, d).transpose();
  c.psi = llt.solve(a.transpose()).transpose();
  c.lambda = phi(tau, t_i, d) - c.psi * phi(t_next, t_i, d);
  return c;
}

GpModel::GpModel(Matrix qc, std::vector<double> timestamps)
    : qc_(std::move(qc)), times_(std::move(timestamps)) {
  check_qc(qc_);
  if (times_.size() < 2) throw InvalidInput("GP model needs at least two support times");
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1])) throw InvalidInput("support times must strictly increase");
  }
  whitening_.reserve(times_.size() - 1);
  for (std::size_t i = 0; i + 1 < times_.size(); ++i) {
    whitening_.push_back(inverse_cholesky(q_block(times_[i + 1] - times_[i], qc_)));
    transition_.push_back(phi(times_[i + 1], times_[i], dof()));
  }
}

GpModel GpModel::uniform(int dof, double qc, double total_time, int segments) {
  if (dof <= 0) throw InvalidInput("dof must be positive");
  if (!(total_time > 0.0)) throw InvalidInput("total time must be positive");
  if (segments <= 0) throw InvalidInput("segment count must be positive");
  if (!(qc > 0.0)) throw InvalidInput("Qc must be positive");
  std::vector<double> t(segments + 1);
  for (int i = 0; i <= segments; ++i) t[i] = total_time * i / segments;
  return GpModel(qc * Matrix::Identity(dof, dof), std::move(t));
}

InterpolationCoeffs GpModel::coeffs(int segment, double tau) const {
  if (segment < 0 || segment >= segment_count()) throw InvalidInput("segment index out of range");
  return interpolation_coeffs(times_[segment], times_[segment + 1], tau, qc_);
}

PlannerState GpModel::interpolate(int segment, const PlannerState& left, const PlannerState& right,
                                  double tau) const {
  if (left.dof() != dof() || right.dof() != dof()) throw InvalidInput("state dimension mismatch");
  const InterpolationCoeffs c = coeffs(segment, tau);
  return PlannerState(Vector(c.lambda * left.stacked() + c.psi * right.stacked()));
}

PriorResidual gp_prior_error(const Vector& first, const Vector& second, const GpModel& model,
                             int segment) {
  const int d = model.dof();
  if (first.size() != 2 * d || second.size() != 2 * d) throw InvalidInput("state dimension mismatch");
  const Matrix& transition = model.transition(segment);
  const Matrix& w = model.whitening(segment);
  PriorResidual r;
  r.residual = w * (transition * first - second);
  r.jac_first = w * transition;
  r.jac_second = -w;
  return r;
}

PlannerState interpolate(const PlannerState& left, const PlannerState& right, double tau,
                         const GpModel& model, int segment) {
  return model.interpolate(segment, left, right, tau);
}

}  // namespace usvplan::gp
