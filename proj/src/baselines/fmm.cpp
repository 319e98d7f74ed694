#include "usvplan/baselines/fmm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "usvplan/error.hpp"

namespace usvplan::baselines {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Upwind update of one cell from its known axis neighbours.
double eikonal_update(double tx, double ty, double h_over_f) {
  if (tx > ty) std::swap(tx, ty);
  if (ty == kInf || ty - tx >= h_over_f) return tx + h_over_f;
  const double s = tx + ty;
  const double disc = s * s - 2.0 * (tx * tx + ty * ty - h_over_f * h_over_f);
  return 0.5 * (s + std::sqrt(std::max(0.0, disc)));
}

}  // namespace

FmmResult fmm_plan(const fields::SignedDistanceField& sdf, const fields::EnvironmentField& env,
                   const Point2& start, const Point2& goal, const FmmParams& params) {
  const auto& g = sdf.geometry();
  if (!(env.geometry() == g)) throw InvalidInput("FMM fields must share one geometry");
  if (!(params.beta >= 0.0)) throw InvalidInput("FMM beta must be >= 0");
  const auto sc = g.cell_at(start), gc = g.cell_at(goal);
  if (!sc || !gc) throw InvalidInput("FMM endpoints must lie inside the map");
  if (!(sdf.value(start) > 0.0) || !(sdf.value(goal) > 0.0)) throw InvalidInput("FMM endpoints must be free");

  const double clearance = effective_inflation(sdf, start, goal, params.inflation);
  const auto& energy = env.energy_rate();
  const int w = g.width, hgt = g.height;
  const double h = g.cell_size;

  std::vector<double> slowness(g.cell_count(), kInf);
  for (int y = 0; y < hgt; ++y) {
    for (int x = 0; x < w; ++x) {
      const double e = energy.at(x, y);
      if (sdf.at(x, y) > clearance && e < params.block_energy) slowness[g.index(x, y)] = 1.0 + params.beta * e;
    }
  }
  // The endpoints themselves stay open so that closures only act on the route.
  for (const auto& c : {*sc, *gc}) {
    auto& s = slowness[g.index(c.x, c.y)];
    if (s == kInf) s = 1.0 + params.beta * energy.at(c.x, c.y);
  }

  FmmResult result;
  auto& T = result.arrival;
  T.assign(g.cell_count(), kInf);
  std::vector<std::uint8_t> frozen(g.cell_count(), 0);
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  const std::size_t s0 = g.index(sc->x, sc->y);
  T[s0] = 0.0;
  heap.push({0.0, s0});

  static const int kDx[4] = {1, -1, 0, 0};
  static const int kDy[4] = {0, 0, 1, -1};
  auto value = [&](int x, int y) { return g.contains(x, y) ? T[g.index(x, y)] : kInf; };
  auto frozen_value = [&](int x, int y) {
    return g.contains(x, y) && frozen[g.index(x, y)] ? T[g.index(x, y)] : kInf;
  };

  while (!heap.empty()) {
    const auto [t, u] = heap.top();
    heap.pop();
    if (frozen[u] || t > T[u]) continue;
    frozen[u] = 1;
    const int ux = static_cast<int>(u % w), uy = static_cast<int>(u / w);
    for (int k = 0; k < 4; ++k) {
      const int vx = ux + kDx[k], vy = uy + kDy[k];
      if (!g.contains(vx, vy)) continue;
      const std::size_t v = g.index(vx, vy);
      if (frozen[v] || slowness[v] == kInf) continue;
      const double tx = std::min(frozen_value(vx - 1, vy), frozen_value(vx + 1, vy));
      const double ty = std::min(frozen_value(vx, vy - 1), frozen_value(vx, vy + 1));
      const double cand = eikonal_update(tx, ty, h * slowness[v]);
      if (cand < T[v]) {
        T[v] = cand;
        heap.push({cand, v});
      }
    }
  }
  const std::size_t goal_idx = g.index(gc->x, gc->y);
  if (T[goal_idx] == kInf) throw PlanningFailed("unreachable", "no open route reaches the goal");

  // Unreached cells get a ceiling value so the interpolated surface stays finite.
  double t_max = 0.0;
  for (double t : T) if (t < kInf) t_max = std::max(t_max, t);
  std::vector<double> filled(T);
  for (double& t : filled) if (t == kInf) t = 2.0 * t_max + h;
  const fields::ScalarRaster surface(g, std::move(filled));

  std::vector<Point2> walk{goal};
  Point2 p = goal;
  const double stride = 0.5 * h;
  const std::size_t budget = 8 * g.cell_count();
  double last = surface.sample(p).value;
  int stalled = 0;
  auto near_start = [&](const Point2& q) { return (q - start).norm() <= h; };

  while (!near_start(p) && walk.size() < budget) {
    const auto s = surface.sample(p);
    const double gn = s.gradient.norm();
    bool continuous = gn > 1e-12 && stalled < 4;
    if (continuous) {
      const Point2 q = p - stride * s.gradient / gn;
      const double tq = surface.sample(q).value;
      const auto cq = g.cell_at(q);
      if (!cq || T[g.index(cq->x, cq->y)] == kInf) {
        continuous = false;
      } else {
        stalled = tq < last ? 0 : stalled + 1;
        last = std::min(last, tq);
        p = q;
        walk.push_back(p);
      }
    }
    if (!continuous) {
      // Steepest discrete descent over the 8-neighbourhood of the current cell.
      const auto c = *g.cell_at(p);
      int bx = c.x, by = c.y;
      double bt = value(c.x, c.y);
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const double tv = value(c.x + dx, c.y + dy);
          if (tv < bt) bt = tv, bx = c.x + dx, by = c.y + dy;
        }
      }
      if (bx == c.x && by == c.y) break;  // at the source cell
      p = g.cell_center(bx, by);
      last = surface.sample(p).value;
      stalled = 0;
      walk.push_back(p);
    }
  }
  walk.push_back(start);
  std::reverse(walk.begin(), walk.end());
  result.path = std::move(walk);

  result.mean_energy_rate = optimizer::mean_along(result.path, energy);
  for (const auto& q : result.path) result.max_energy_rate = std::max(result.max_energy_rate, energy.sample(q).value);
  return result;
}

}  // namespace usvplan::baselines
