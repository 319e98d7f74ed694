#include <gtest/gtest.h>

#include "oracles.hpp"
#include "usvplan/error.hpp"
#include "usvplan/gp/gp_model.hpp"

using namespace usvplan;
using namespace usvplan::gp;

TEST(Phi, ZeroElapsedIsIdentity) {
  EXPECT_TRUE(phi(1.5, 1.5, 2).isApprox(Matrix::Identity(4, 4)));
}

TEST(Phi, TopRightBlockIsElapsedTime) {
  const Matrix p = phi(3.0, 1.0, 2);
  EXPECT_TRUE(p.topRightCorner(2, 2).isApprox(2.0 * Matrix::Identity(2, 2)));
  EXPECT_TRUE(p.bottomLeftCorner(2, 2).isZero());
}

TEST(Phi, Semigroup) {
  Rng rng(1);
  for (int k = 0; k < 100; ++k) {
    const double t1 = uniform(rng, 0, 5), t2 = t1 + uniform(rng, 0, 5), t3 = t2 + uniform(rng, 0, 5);
    EXPECT_LE((phi(t3, t1, 3) - phi(t3, t2, 3) * phi(t2, t1, 3)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Phi, BackwardsRejected) { EXPECT_THROW(phi(1.0, 2.0, 2), InvalidInterval); }

TEST(QBetween, UnitCase) {
  Matrix expect(4, 4);
  expect << 1.0 / 3, 0, 0.5, 0, 0, 1.0 / 3, 0, 0.5, 0.5, 0, 1, 0, 0, 0.5, 0, 1;
  EXPECT_LE((q_between(0.0, 1.0, Matrix::Identity(2, 2)) - expect).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(QBetween, SymmetricPositiveDefinite) {
  Rng rng(2);
  for (int k = 0; k < 50; ++k) {
    const double dt = uniform(rng, 1e-3, 10);
    const Matrix q = q_between(1.0, 1.0 + dt, uniform(rng, 0.1, 50) * Matrix::Identity(2, 2));
    EXPECT_TRUE(q.isApprox(q.transpose()));
    EXPECT_EQ(Eigen::LLT<Matrix>(q).info(), Eigen::Success);
  }
}

TEST(QBetween, MatchesQuadrature) {
  const Matrix qc = 2.0 * Matrix::Identity(2, 2);
  const Matrix quad = oracle::q_quadrature(0.37, qc);
  EXPECT_LE((q_between(0.0, 0.37, qc) - quad).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(QBetween, NonPositiveIntervalRejected) {
  EXPECT_THROW(q_between(1.0, 1.0, Matrix::Identity(2, 2)), InvalidInterval);
}

TEST(PriorError, ZeroOnPriorFlow) {
  const GpModel m = GpModel::uniform(2, 3.0, 2.0, 4);
  Rng rng(3);
  Vector a(4);
  for (int i = 0; i < 4; ++i) a(i) = uniform(rng, -5, 5);
  const Vector b = m.transition(1) * a;
  EXPECT_LE(gp_prior_error(a, b, m, 1).residual.norm(), 1e-12);
}

TEST(PriorError, ConstantVelocityExample) {
  const GpModel m = GpModel::uniform(2, 1.0, 1.0, 1);
  Vector a(4), b(4);
  a << 0, 0, 1, 0;
  b << 1, 0, 1, 0;
  EXPECT_LE(gp_prior_error(a, b, m, 0).residual.norm(), 1e-14);
}

TEST(PriorError, JacobiansMatchFiniteDifferences) {
  const GpModel m = GpModel::uniform(2, 5.0, 2.0, 5);
  Rng rng(4);
  for (int k = 0; k < 20; ++k) {
    Vector a(4), b(4);
    for (int i = 0; i < 4; ++i) {
      a(i) = uniform(rng, -10, 10);
      b(i) = uniform(rng, -10, 10);
    }
    const auto r = gp_prior_error(a, b, m, 2);
    const Matrix ja = oracle::numeric_jacobian([&](const Vector& x) { return gp_prior_error(x, b, m, 2).residual; }, a, 1e-6);
    const Matrix jb = oracle::numeric_jacobian([&](const Vector& x) { return gp_prior_error(a, x, m, 2).residual; }, b, 1e-6);
    EXPECT_LE((r.jac_first - ja).norm(), 1e-5 * std::max(1.0, ja.norm()));
    EXPECT_LE((r.jac_second - jb).norm(), 1e-5 * std::max(1.0, jb.norm()));
  }
}

TEST(Whitening, InvertsTheSegmentCovariance) {
  const GpModel m = GpModel::uniform(2, 7.0, 3.0, 3);
  const Matrix w = m.whitening(0);
  const Matrix q = q_between(m.time(0), m.time(1), m.qc());
  EXPECT_LE((w.transpose() * w * q - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Interpolate, EndpointIdentities) {
  const GpModel m = GpModel::uniform(2, 10.0, 2.0, 5);
  Rng rng(5);
  Vector a(4), b(4);
  for (int i = 0; i < 4; ++i) {
    a(i) = uniform(rng, -50, 50);
    b(i) = uniform(rng, -50, 50);
  }
  const auto left = interpolate(PlannerState(a), PlannerState(b), m.time(2), m, 2);
  const auto right = interpolate(PlannerState(a), PlannerState(b), m.time(3), m, 2);
  EXPECT_LE((left.stacked() - a).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE((right.stacked() - b).cwiseAbs().maxCoeff(), 1e-10);
  const auto c0 = m.coeffs(2, m.time(2));
  EXPECT_TRUE(c0.lambda.isApprox(Matrix::Identity(4, 4)));
  EXPECT_LE(c0.psi.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Interpolate, MatchesDenseConditioning) {
  const GpModel m = GpModel::uniform(2, 4.0, 2.0, 4);
  Rng rng(6);
  for (int k = 0; k < 100; ++k) {
    Vector a(4), b(4);
    for (int i = 0; i < 4; ++i) {
      a(i) = uniform(rng, -20, 20);
      b(i) = uniform(rng, -20, 20);
    }
    const int seg = static_cast<int>(rng() % 4);
    const double tau = uniform(rng, m.time(seg), m.time(seg + 1));
    const Vector got = interpolate(PlannerState(a), PlannerState(b), tau, m, seg).stacked();
    const Vector expect = oracle::conditional_mean(a, b, m.time(seg), tau, m.time(seg + 1), m.qc());
    EXPECT_LE((got - expect).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(Interpolate, StaysOnConstantVelocityLine) {
  const GpModel m = GpModel::uniform(2, 1.0, 1.0, 1);
  Vector a(4), b(4);
  a << 1, 2, 3, -1;
  b << 4, 1, 3, -1;
  for (double tau : {0.1, 0.35, 0.5, 0.9}) {
    const Vector s = interpolate(PlannerState(a), PlannerState(b), tau, m, 0).stacked();
    EXPECT_NEAR(s(0), 1 + 3 * tau, 1e-12);
    EXPECT_NEAR(s(1), 2 - tau, 1e-12);
  }
}

TEST(Interpolate, OutsideSegmentRejected) {
  const GpModel m = GpModel::uniform(2, 1.0, 1.0, 2);
  const PlannerState s(Vector::Zero(4));
  EXPECT_THROW(interpolate(s, s, 0.9, m, 0), InvalidInput);
}

TEST(GpModel, RejectsNonIncreasingTimes) {
  EXPECT_THROW(GpModel(Matrix::Identity(2, 2), {0.0, 1.0, 1.0}), InvalidInput);
}
