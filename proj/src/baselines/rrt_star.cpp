#include "usvplan/baselines/rrt_star.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "usvplan/error.hpp"
#include "usvplan/random.hpp"

namespace usvplan::baselines {

namespace {

struct Node {
  Point2 p;
  int parent = -1;
  double cost = 0.0;
  std::vector<int> children;
};

// Uniform buckets over the map for nearest / radius queries.
class Buckets {
 public:
  Buckets(const Point2& lo, const Point2& hi, double size)
      : lo_(lo), size_(size),
        nx_(std::max(1, static_cast<int>(std::ceil((hi.x() - lo.x()) / size)))),
        ny_(std::max(1, static_cast<int>(std::ceil((hi.y() - lo.y()) / size)))),
        cells_(static_cast<std::size_t>(nx_) * ny_) {}

  void insert(int id, const Point2& p) { cells_[cell(p)].push_back(id); }

  int nearest(const std::vector<Node>& nodes, const Point2& p) const {
    const auto [cx, cy] = coords(p);
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int ring = 0; ring <= std::max(nx_, ny_); ++ring) {
      // Anything in ring k is at least (k - 1) * size away.
      if (best >= 0 && (ring - 1) * size_ > best_d) break;
      for (int y = cy - ring; y <= cy + ring; ++y) {
        for (int x = cx - ring; x <= cx + ring; ++x) {
          if (std::max(std::abs(x - cx), std::abs(y - cy)) != ring) continue;
          if (x < 0 || y < 0 || x >= nx_ || y >= ny_) continue;
          for (int id : cells_[static_cast<std::size_t>(y) * nx_ + x]) {
            const double d = (nodes[id].p - p).norm();
            if (d < best_d) best_d = d, best = id;
          }
        }
      }
    }
    return best;
  }

  std::vector<int> within(const std::vector<Node>& nodes, const Point2& p, double r) const {
    std::vector<int> out;
    const int span = static_cast<int>(std::ceil(r / size_));
    const auto [cx, cy] = coords(p);
    for (int y = std::max(0, cy - span); y <= std::min(ny_ - 1, cy + span); ++y) {
      for (int x = std::max(0, cx - span); x <= std::min(nx_ - 1, cx + span); ++x) {
        for (int id : cells_[static_cast<std::size_t>(y) * nx_ + x]) {
          if ((nodes[id].p - p).norm() <= r) out.push_back(id);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::pair<int, int> coords(const Point2& p) const {
    const int x = std::clamp(static_cast<int>(std::floor((p.x() - lo_.x()) / size_)), 0, nx_ - 1);
    const int y = std::clamp(static_cast<int>(std::floor((p.y() - lo_.y()) / size_)), 0, ny_ - 1);
    return {x, y};
  }
  std::size_t cell(const Point2& p) const {
    const auto [x, y] = coords(p);
    return static_cast<std::size_t>(y) * nx_ + x;
  }

  Point2 lo_;
  double size_;
  int nx_, ny_;
  std::vector<std::vector<int>> cells_;
};

void propagate(std::vector<Node>& nodes, int root) {
  std::vector<int> stack{root};
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int c : nodes[u].children) {
      nodes[c].cost = nodes[u].cost + (nodes[c].p - nodes[u].p).norm();
      stack.push_back(c);
    }
  }
}

void reparent(std::vector<Node>& nodes, int child, int parent) {
  auto& siblings = nodes[nodes[child].parent].children;
  siblings.erase(std::find(siblings.begin(), siblings.end(), child));
  nodes[child].parent = parent;
  nodes[parent].children.push_back(child);
}

}  // namespace

RrtStarResult rrt_star_plan(const fields::SignedDistanceField& sdf, const Point2& start,
                            const Point2& goal, const RrtStarParams& params, std::uint64_t seed) {
  if (!(params.step > 0.0)) throw InvalidInput("RRT* step must be positive");
  if (!(params.goal_bias >= 0.0 && params.goal_bias < 1.0)) throw InvalidInput("RRT* goal bias must be in [0, 1)");
  if (params.max_samples < 1) throw InvalidInput("RRT* needs at least one sample");
  if (!(sdf.value(start) > 0.0) || !(sdf.value(goal) > 0.0)) throw InvalidInput("RRT* endpoints must be free");

  const auto clock = std::chrono::steady_clock::now();
  const auto& geom = sdf.geometry();
  const Point2 lo = geom.lower_corner(), hi = geom.upper_corner();
  const double clearance = effective_inflation(sdf, start, goal, params.inflation);

  double gamma = params.gamma;
  if (!(gamma > 0.0)) {
    std::size_t free_cells = 0;
    for (double v : sdf.raster().values()) free_cells += v > 0.0;
    const double area = free_cells * geom.cell_size * geom.cell_size;
    gamma = 2.0 * std::sqrt(1.5) * std::sqrt(area / std::numbers::pi);
  }

  Rng rng(seed);
  std::vector<Node> nodes;
  nodes.push_back(Node{start, -1, 0.0, {}});
  Buckets buckets(lo, hi, std::max(2.0 * params.step, geom.cell_size));
  buckets.insert(0, start);

  int goal_parent = -1;
  double goal_cost = std::numeric_limits<double>::infinity();
  RrtStarResult result;

  for (int it = 0; it < params.max_samples; ++it) {
    result.samples = it + 1;
    if ((it & 255) == 255) {
      const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - clock).count();
      if (elapsed > params.timeout_s) {
        if (goal_parent >= 0) break;
        throw PlanningFailed("timeout", "RRT* exceeded " + std::to_string(params.timeout_s) + " s");
      }
    }
    const Point2 sample = uniform01(rng) < params.goal_bias
                              ? goal
                              : Point2(uniform(rng, lo.x(), hi.x()), uniform(rng, lo.y(), hi.y()));
    const int near = buckets.nearest(nodes, sample);
    const Point2 d = sample - nodes[near].p;
    const double dn = d.norm();
    if (dn < 1e-9) continue;
    const Point2 x_new = dn <= params.step ? sample : Point2(nodes[near].p + d / dn * params.step);
    if (!(sdf.value(x_new) > clearance)) continue;

    const double n = static_cast<double>(nodes.size()) + 1.0;
    const double radius = gamma * std::sqrt(std::log(n) / n);
    const auto neighbors = buckets.within(nodes, x_new, radius);

    int parent = -1;
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::uint8_t> clear(neighbors.size(), 0);
    for (std::size_t k = 0; k < neighbors.size(); ++k) {
      const int v = neighbors[k];
      clear[k] = segment_clear(sdf, nodes[v].p, x_new, clearance) ? 1 : 0;
      const double c = nodes[v].cost + (x_new - nodes[v].p).norm();
      if (clear[k] && c < best) best = c, parent = v;
    }
    if (parent < 0) {
      if (!segment_clear(sdf, nodes[near].p, x_new, clearance)) continue;
      parent = near;
      best = nodes[near].cost + (x_new - nodes[near].p).norm();
    }

    const int id = static_cast<int>(nodes.size());
    nodes.push_back(Node{x_new, parent, best, {}});
    nodes[parent].children.push_back(id);
    buckets.insert(id, x_new);

    for (std::size_t k = 0; k < neighbors.size(); ++k) {
      const int v = neighbors[k];
      if (!clear[k] || v == parent) continue;
      const double c = best + (nodes[v].p - x_new).norm();
      if (c + 1e-12 < nodes[v].cost) {
        reparent(nodes, v, id);
        nodes[v].cost = c;
        propagate(nodes, v);
      }
    }

    // Goal connection through the nearest-to-goal test on the new node.
    const double dg = (goal - x_new).norm();
    if (dg <= params.step && segment_clear(sdf, x_new, goal, clearance)) {
      if (nodes[id].cost + dg < goal_cost) {
        goal_cost = nodes[id].cost + dg;
        goal_parent = id;
      }
      if (params.stop_at_first_solution) break;
    }
  }
  result.tree_size = static_cast<int>(nodes.size());
  if (goal_parent < 0) throw PlanningFailed("budget-exhausted", "RRT* found no goal connection");

  // Rewiring may have lowered costs after the goal was joined; re-evaluate.
  if (!params.stop_at_first_solution) {
    for (std::size_t v = 0; v < nodes.size(); ++v) {
      const double dg = (goal - nodes[v].p).norm();
      if (dg <= params.step && nodes[v].cost + dg < goal_cost &&
          segment_clear(sdf, nodes[v].p, goal, clearance)) {
        goal_cost = nodes[v].cost + dg;
        goal_parent = static_cast<int>(v);
      }
    }
  }
  result.path.push_back(goal);
  for (int v = goal_parent; v != -1; v = nodes[v].parent) result.path.push_back(nodes[v].p);
  std::reverse(result.path.begin(), result.path.end());
  return result;
}

}  // namespace usvplan::baselines
