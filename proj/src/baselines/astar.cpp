#include "usvplan/baselines/astar.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>

#include "usvplan/error.hpp"

namespace usvplan::baselines {

namespace {

struct Lattice {
  Point2 anchor;
  double step;
  int i0, j0, nx, ny;  // index range covering the map

  int id(int i, int j) const { return (j - j0) * nx + (i - i0); }
  bool valid(int i, int j) const { return i >= i0 && j >= j0 && i < i0 + nx && j < j0 + ny; }
  Point2 at(int i, int j) const { return anchor + step * Point2(i, j); }
};

Lattice make_lattice(const fields::GridGeometry& g, const Point2& anchor, double step) {
  const Point2 lo = g.lower_corner(), hi = g.upper_corner();
  Lattice l{anchor, step, 0, 0, 0, 0};
  l.i0 = static_cast<int>(std::ceil((lo.x() - anchor.x()) / step));
  l.j0 = static_cast<int>(std::ceil((lo.y() - anchor.y()) / step));
  const int i1 = static_cast<int>(std::floor((hi.x() - anchor.x()) / step));
  const int j1 = static_cast<int>(std::floor((hi.y() - anchor.y()) / step));
  l.nx = i1 - l.i0 + 1;
  l.ny = j1 - l.j0 + 1;
  return l;
}

}  // namespace

GridSearchResult astar_plan(const fields::SignedDistanceField& sdf, const Point2& start,
                            const Point2& goal, const GridSearchParams& params) {
  if (!(params.step > 0.0)) throw InvalidInput("A* step must be positive");
  if (!(params.timeout_s > 0.0)) throw InvalidInput("A* timeout must be positive");
  if (!(sdf.value(start) > 0.0) || !(sdf.value(goal) > 0.0)) throw InvalidInput("A* endpoints must be free");

  const auto clock = std::chrono::steady_clock::now();
  const double clearance = effective_inflation(sdf, start, goal, params.inflation);
  const Lattice lat = make_lattice(sdf.geometry(), start, params.step);
  const int n = lat.nx * lat.ny;
  const int goal_id = n;  // virtual node
  const double join = params.step * std::sqrt(2.0) + 1e-9;
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::vector<double> g(n + 1, kInf);
  std::vector<int> parent(n + 1, -1);
  std::vector<std::uint8_t> closed(n + 1, 0);
  // Node traversability is cached: 0 unknown, 1 clear, 2 blocked.
  std::vector<std::uint8_t> node_state(n, 0);

  auto pos = [&](int id) { return id == goal_id ? goal : lat.at(id % lat.nx + lat.i0, id / lat.nx + lat.j0); };
  auto h = [&](int id) { return (pos(id) - goal).norm(); };

  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  const int s = lat.id(0, 0);
  g[s] = 0.0;
  open.push({h(s), s});

  GridSearchResult result;
  static const int kDi[8] = {1, -1, 0, 0, 1, 1, -1, -1};
  static const int kDj[8] = {0, 0, 1, -1, 1, -1, 1, -1};

  while (!open.empty()) {
    const auto [f, u] = open.top();
    open.pop();
    if (closed[u]) continue;
    closed[u] = 1;
    if (u == goal_id) break;
    if ((++result.expanded & 1023) == 0) {
      const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - clock).count();
      if (elapsed > params.timeout_s) throw PlanningFailed("timeout", "A* exceeded " + std::to_string(params.timeout_s) + " s");
    }
    const Point2 pu = pos(u);
    const int ui = u % lat.nx + lat.i0, uj = u / lat.nx + lat.j0;
    for (int k = 0; k < 8; ++k) {
      const int vi = ui + kDi[k], vj = uj + kDj[k];
      if (!lat.valid(vi, vj)) continue;
      const int v = lat.id(vi, vj);
      if (closed[v]) continue;
      if (node_state[v] == 0) node_state[v] = sdf.value(lat.at(vi, vj)) > clearance ? 1 : 2;
      if (node_state[v] == 2) continue;
      const Point2 pv = lat.at(vi, vj);
      const double cost = g[u] + (pv - pu).norm();
      if (cost >= g[v]) continue;
      if (!segment_clear(sdf, pu, pv, clearance)) continue;
      g[v] = cost;
      parent[v] = u;
      open.push({cost + h(v), v});
    }
    const double dg = (goal - pu).norm();
    if (dg <= join && g[u] + dg < g[goal_id] && segment_clear(sdf, pu, goal, clearance)) {
      g[goal_id] = g[u] + dg;
      parent[goal_id] = u;
      open.push({g[goal_id], goal_id});
    }
  }
  if (!closed[goal_id]) throw PlanningFailed("no-path", "A* exhausted the lattice");

  for (int v = goal_id; v != -1; v = parent[v]) result.path.push_back(pos(v));
  std::reverse(result.path.begin(), result.path.end());
  // The goal may coincide with the last lattice node.
  if (result.path.size() >= 2 && (result.path[result.path.size() - 2] - goal).norm() < 1e-12) {
    result.path.erase(result.path.end() - 2);
  }
  return result;
}

}  // namespace usvplan::baselines
