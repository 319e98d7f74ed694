#include "usvplan/graph/monte_carlo.hpp"

#include <algorithm>
#include <cmath>

#include "usvplan/error.hpp"
#include "usvplan/random.hpp"

namespace usvplan::graph {

Region Region::bounding(const Point2& a, const Point2& b, double inflate) {
  const Point2 pad = Point2::Constant(inflate);
  return Region{a.cwiseMin(b) - pad, a.cwiseMax(b) + pad};
}

Region Region::clipped_to(const fields::GridGeometry& g) const {
  return Region{lower.cwiseMax(g.lower_corner()), upper.cwiseMin(g.upper_corner())};
}

McEstimate mc_estimate_obstacle_space(const fields::OccupancyGrid& grid, const Region& region,
                                      int samples, std::uint64_t seed) {
  if (samples < 1) throw InvalidInput("Monte-Carlo estimate needs at least one sample");
  const Region r = region.clipped_to(grid.geometry());
  if (r.empty()) throw InvalidInput("Monte-Carlo sampling region is empty");

  Rng rng(seed);
  int accepted = 0;
  for (int i = 0; i < samples; ++i) {
    const Point2 p(uniform(rng, r.lower.x(), r.upper.x()), uniform(rng, r.lower.y(), r.upper.y()));
    if (!grid.occupied_at(p)) ++accepted;
  }
  McEstimate e;
  e.samples = samples;
  e.accepted = accepted;
  e.p_obs = 1.0 - static_cast<double>(accepted) / samples;
  e.seed = seed;
  return e;
}

McEstimate traverse_obstacle_space(const fields::OccupancyGrid& grid, const Region& region) {
  const auto& g = grid.geometry();
  const Region r = region.clipped_to(g);
  if (r.empty()) throw InvalidInput("traversal region is empty");
  const Point2 lo = g.to_cell_coords(r.lower);
  const Point2 hi = g.to_cell_coords(r.upper);
  const int x0 = std::max(0, static_cast<int>(std::ceil(lo.x())));
  const int y0 = std::max(0, static_cast<int>(std::ceil(lo.y())));
  const int x1 = std::min(g.width - 1, static_cast<int>(std::floor(hi.x())));
  const int y1 = std::min(g.height - 1, static_cast<int>(std::floor(hi.y())));

  McEstimate e;
  if (x1 < x0 || y1 < y0) {
    // Region narrower than a cell: the single covering cell decides.
    const auto cell = g.cell_at(0.5 * (r.lower + r.upper));
    e.samples = 1;
    e.accepted = cell && grid.occupied(cell->x, cell->y) ? 0 : 1;
  } else {
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        ++e.samples;
        if (!grid.occupied(x, y)) ++e.accepted;
      }
    }
  }
  e.p_obs = 1.0 - static_cast<double>(e.accepted) / e.samples;
  return e;
}

}  // namespace usvplan::graph
