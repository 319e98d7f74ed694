#include "usvplan/fields/grid.hpp"

#include <algorithm>
#include <cmath>

#include "usvplan/error.hpp"

namespace usvplan::fields {

void GridGeometry::validate() const {
  if (width <= 0 || height <= 0) {
    throw InvalidInput("grid must have positive width and height");
  }
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw InvalidInput("grid cell size must be positive");
  }
}

std::optional<CellIndex> GridGeometry::cell_at(const Point2& p) const {
  const Point2 c = to_cell_coords(p);
  const int x = static_cast<int>(std::floor(c.x() + 0.5));
  const int y = static_cast<int>(std::floor(c.y() + 0.5));
  if (!contains(x, y)) return std::nullopt;
  return CellIndex{x, y};
}

OccupancyGrid::OccupancyGrid(GridGeometry geometry)
    : geometry_(geometry), cells_() {
  geometry_.validate();
  cells_.assign(geometry_.cell_count(), 0);
}

OccupancyGrid::OccupancyGrid(GridGeometry geometry, std::vector<std::uint8_t> cells)
    : geometry_(geometry), cells_(std::move(cells)) {
  geometry_.validate();
  if (cells_.size() != geometry_.cell_count()) {
    throw InvalidInput("occupancy cell count does not match width x height");
  }
  for (auto& c : cells_) c = c ? 1 : 0;
}

bool OccupancyGrid::occupied_at(const Point2& p) const {
  const auto cell = geometry_.cell_at(p);
  return cell && occupied(cell->x, cell->y);
}

std::size_t OccupancyGrid::occupied_count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), 1));
}

ScalarRaster::ScalarRaster(GridGeometry geometry, std::vector<double> values)
    : geometry_(geometry), values_(std::move(values)) {
  geometry_.validate();
  if (values_.size() != geometry_.cell_count()) {
    throw InvalidInput("raster value count does not match width x height");
  }
}

namespace {

// Lower lattice index, fractional offset and clamp flag along one axis.
struct AxisLookup {
  int lo;
  int hi;
  double t;
  bool clamped;
};

AxisLookup lookup_axis(double c, int n) {
  AxisLookup a{0, 0, 0.0, false};
  if (n == 1) {
    a.clamped = c != 0.0;
    return a;
  }
  if (c <= 0.0) {
    a.clamped = c < 0.0;
    c = 0.0;
  } else if (c >= n - 1) {
    a.clamped = c > n - 1;
    c = n - 1;
  }
  a.lo = std::min(static_cast<int>(std::floor(c)), n - 2);
  a.hi = a.lo + 1;
  a.t = c - a.lo;
  return a;
}

}  // namespace

RasterSample ScalarRaster::sample(const Point2& p) const {
  const Point2 c = geometry_.to_cell_coords(p);
  const AxisLookup ax = lookup_axis(c.x(), geometry_.width);
  const AxisLookup ay = lookup_axis(c.y(), geometry_.height);

  const double v00 = at(ax.lo, ay.lo);
  const double v10 = at(ax.hi, ay.lo);
  const double v01 = at(ax.lo, ay.hi);
  const double v11 = at(ax.hi, ay.hi);

  RasterSample s;
  const double bottom = v00 + ax.t * (v10 - v00);
  const double top = v01 + ax.t * (v11 - v01);
  s.value = bottom + ay.t * (top - bottom);

  const double inv = 1.0 / geometry_.cell_size;
  const double dx = (1.0 - ay.t) * (v10 - v00) + ay.t * (v11 - v01);
  const double dy = top - bottom;
  s.gradient.x() = ax.clamped || ax.lo == ax.hi ? 0.0 : dx * inv;
  s.gradient.y() = ay.clamped || ay.lo == ay.hi ? 0.0 : dy * inv;
  s.clamped = ax.clamped || ay.clamped;
  return s;
}

}  // namespace usvplan::fields
