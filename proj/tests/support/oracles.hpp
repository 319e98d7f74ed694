#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Each one is deliberately written the slow, obvious way.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include <Eigen/Dense>

#include "usvplan/fields/grid.hpp"
#include "usvplan/random.hpp"

namespace oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using usvplan::fields::OccupancyGrid;
using usvplan::fields::Point2;

inline OccupancyGrid random_grid(int w, int h, double density, usvplan::Rng& rng) {
  OccupancyGrid g(usvplan::fields::GridGeometry{w, h, 1.0, Point2::Zero()});
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) g.set(x, y, usvplan::uniform01(rng) < density);
  return g;
}

// All-pairs scan over cell centers: distance to the nearest cell of the other
// kind, positive for free cells and negative for occupied ones.
inline std::vector<double> brute_force_sdf(const OccupancyGrid& g, double cap) {
  const int w = g.width(), h = g.height();
  const double cs = g.cell_size();
  std::vector<double> out(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const bool occ = g.occupied(x, y);
      double best = std::numeric_limits<double>::infinity();
      for (int v = 0; v < h; ++v)
        for (int u = 0; u < w; ++u)
          if (g.occupied(u, v) != occ) best = std::min(best, cs * std::hypot(u - x, v - y));
      best = std::min(best, cap);
      out[static_cast<std::size_t>(y) * w + x] = occ ? -best : best;
    }
  }
  return out;
}

// Bilinear surface through four corner samples written out term by term.
inline double bilinear(const std::vector<double>& v, int w, int h, double cx, double cy) {
  cx = std::clamp(cx, 0.0, w - 1.0);
  cy = std::clamp(cy, 0.0, h - 1.0);
  const int x0 = std::min(static_cast<int>(std::floor(cx)), w - 2);
  const int y0 = std::min(static_cast<int>(std::floor(cy)), h - 2);
  const double a = cx - x0, b = cy - y0;
  auto at = [&](int x, int y) { return v[static_cast<std::size_t>(y) * w + x]; };
  return at(x0, y0) * (1 - a) * (1 - b) + at(x0 + 1, y0) * a * (1 - b) +
         at(x0, y0 + 1) * (1 - a) * b + at(x0 + 1, y0 + 1) * a * b;
}

// Constant-velocity blocks rebuilt from the double-integrator definition.
inline MatrixXd transition(double dt, int d) {
  MatrixXd m = MatrixXd::Identity(2 * d, 2 * d);
  for (int i = 0; i < d; ++i) m(i, d + i) = dt;
  return m;
}

// Composite Simpson quadrature of Q = int_0^dt Phi(dt,s) F Qc F^T Phi(dt,s)^T ds.
inline MatrixXd q_quadrature(double dt, const MatrixXd& qc, int intervals = 2000) {
  const int d = static_cast<int>(qc.rows());
  MatrixXd f = MatrixXd::Zero(2 * d, d);
  f.bottomRows(d).setIdentity();
  auto integrand = [&](double s) {
    const MatrixXd p = transition(dt - s, d);
    return MatrixXd(p * f * qc * f.transpose() * p.transpose());
  };
  const double hstep = dt / intervals;
  MatrixXd sum = integrand(0.0) + integrand(dt);
  for (int k = 1; k < intervals; ++k) sum += (k % 2 ? 4.0 : 2.0) * integrand(k * hstep);
  return sum * hstep / 3.0;
}

inline MatrixXd q_closed(double dt, const MatrixXd& qc) {
  const int d = static_cast<int>(qc.rows());
  MatrixXd q(2 * d, 2 * d);
  q << dt * dt * dt / 3.0 * qc, dt * dt / 2.0 * qc, dt * dt / 2.0 * qc, dt * qc;
  return q;
}

// Conditional mean of theta(tau) in the joint Gaussian over
// {theta_a, theta(tau), theta_b} given both endpoints.
inline VectorXd conditional_mean(const VectorXd& ta, const VectorXd& tb, double t_a, double tau,
                                 double t_b, const MatrixXd& qc) {
  const int d = static_cast<int>(qc.rows());
  const MatrixXd p1 = transition(tau - t_a, d);
  const MatrixXd p2 = transition(t_b - tau, d);
  const MatrixXd q1 = q_closed(tau - t_a, qc);
  const MatrixXd q2 = q_closed(t_b - tau, qc);
  const MatrixXd cross = q1 * p2.transpose();
  const MatrixXd cov_b = p2 * q1 * p2.transpose() + q2;
  const VectorXd mean_tau = p1 * ta;
  const VectorXd mean_b = p2 * mean_tau;
  return mean_tau + cross * cov_b.ldlt().solve(tb - mean_b);
}

// Central differences of a vector function.
inline MatrixXd numeric_jacobian(const std::function<VectorXd(const VectorXd&)>& f,
                                 const VectorXd& x, double h) {
  const VectorXd f0 = f(x);
  MatrixXd j(f0.size(), x.size());
  for (int k = 0; k < x.size(); ++k) {
    VectorXd xp = x, xm = x;
    xp(k) += h;
    xm(k) -= h;
    j.col(k) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return j;
}

// Dijkstra over the unit lattice anchored at integer start coordinates;
// `node_ok` and `edge_ok` define the graph. Returns +inf when unreachable.
inline double lattice_dijkstra(int w, int h, int sx, int sy, int gx, int gy,
                               const std::function<bool(int, int)>& node_ok,
                               const std::function<bool(int, int, int, int)>& edge_ok) {
  std::vector<double> dist(static_cast<std::size_t>(w) * h, std::numeric_limits<double>::infinity());
  using E = std::pair<double, int>;
  std::priority_queue<E, std::vector<E>, std::greater<>> pq;
  dist[sy * w + sx] = 0.0;
  pq.push({0.0, sy * w + sx});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    const int ux = u % w, uy = u / w;
    if (ux == gx && uy == gy) return d;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const int vx = ux + dx, vy = uy + dy;
        if (vx < 0 || vy < 0 || vx >= w || vy >= h || !node_ok(vx, vy)) continue;
        if (!edge_ok(ux, uy, vx, vy)) continue;
        const double nd = d + std::hypot(dx, dy);
        if (nd < dist[vy * w + vx]) {
          dist[vy * w + vx] = nd;
          pq.push({nd, vy * w + vx});
        }
      }
    }
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace oracle
