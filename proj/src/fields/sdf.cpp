#include "usvplan/fields/sdf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "usvplan/error.hpp"

namespace usvplan::fields {
namespace {

constexpr double kFar = 1e20;

// Felzenszwalb & Huttenlocher lower-envelope transform of a sampled function
// along one line. `f` is read with stride, results written to `d`.
void transform_line(const double* f, std::size_t stride, int n, double* d,
                    std::vector<int>& v, std::vector<double>& z) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  auto fv = [&](int q) { return f[static_cast<std::size_t>(q) * stride]; };
  auto intersect = [&](int q, int p) {
    return ((fv(q) + double(q) * q) - (fv(p) + double(p) * p)) / (2.0 * q - 2.0 * p);
  };
  int k = 0;
  v[0] = 0;
  z[0] = -inf;
  z[1] = inf;
  for (int q = 1; q < n; ++q) {
    double s = intersect(q, v[k]);
    while (s <= z[k]) {
      --k;
      s = intersect(q, v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = inf;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    const double dq = q - v[k];
    d[static_cast<std::size_t>(q) * stride] = dq * dq + fv(v[k]);
  }
}

// Squared distance (in cells) from every cell to the nearest cell where
// `source` is true; kFar-ish where no source exists.
std::vector<double> squared_distance_to(const GridGeometry& g,
                                        const std::vector<std::uint8_t>& cells,
                                        std::uint8_t source_value) {
  const int w = g.width;
  const int h = g.height;
  std::vector<double> f(g.cell_count());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = cells[i] == source_value ? 0.0 : kFar;

  std::vector<double> tmp(f.size());
  const int n = std::max(w, h);
  std::vector<int> v(n);
  std::vector<double> z(n + 1);

  for (int x = 0; x < w; ++x) transform_line(&f[x], w, h, &tmp[x], v, z);
  for (int y = 0; y < h; ++y) {
    const std::size_t row = static_cast<std::size_t>(y) * w;
    transform_line(&tmp[row], 1, w, &f[row], v, z);
  }
  return f;
}

}  // namespace

SignedDistanceField compute_sdf(const OccupancyGrid& grid, double max_cap) {
  const GridGeometry& g = grid.geometry();
  if (g.cell_count() == 0 || grid.cells().size() != g.cell_count()) {
    throw InvalidInput("cannot compute a signed distance field of an empty grid");
  }
  if (!(max_cap > 0.0)) throw InvalidInput("signed distance cap must be positive");

  const auto to_obstacle = squared_distance_to(g, grid.cells(), 1);
  const auto to_free = squared_distance_to(g, grid.cells(), 0);

  // Anything beyond this squared cell distance cannot come from a real source.
  const double unreachable = 0.5 * kFar;
  std::vector<double> values(g.cell_count());
  for (std::size_t i = 0; i < values.size(); ++i) {
    double d;
    if (grid.cells()[i]) {
      d = to_free[i] >= unreachable ? -max_cap : -std::sqrt(to_free[i]) * g.cell_size;
    } else {
      d = to_obstacle[i] >= unreachable ? max_cap : std::sqrt(to_obstacle[i]) * g.cell_size;
    }
    values[i] = std::clamp(d, -max_cap, max_cap);
  }
  return SignedDistanceField(ScalarRaster(g, std::move(values)), max_cap);
}

SignedDistanceField compute_sdf(const OccupancyGrid& grid) {
  const GridGeometry& g = grid.geometry();
  return compute_sdf(grid, std::max(g.width, g.height) * g.cell_size);
}

}  // namespace usvplan::fields
