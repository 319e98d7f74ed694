#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

namespace usvplan::fields {

using Point2 = Eigen::Vector2d;

struct CellIndex {
  int x = 0;
  int y = 0;
  bool operator==(const CellIndex&) const = default;
};

// Shape of a 2D raster. Samples live at cell centers; `origin` is the world
// position of the center of cell (0,0) and cell (i,j) is centered at
// origin + cell_size * (i, j).
struct GridGeometry {
  int width = 0;
  int height = 0;
  double cell_size = 1.0;
  Point2 origin = Point2::Zero();

  // Throws InvalidInput unless width, height and cell_size are positive.
  void validate() const;

  std::size_t cell_count() const { return static_cast<std::size_t>(width) * height; }
  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
  bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }

  Point2 cell_center(int x, int y) const { return origin + cell_size * Point2(x, y); }
  // Continuous cell coordinates: cell centers sit at integer values.
  Point2 to_cell_coords(const Point2& p) const { return (p - origin) / cell_size; }

  // World-space extent covered by the cells (outer cell edges).
  Point2 lower_corner() const { return origin - Point2::Constant(0.5 * cell_size); }
  Point2 upper_corner() const {
    return origin + cell_size * Point2(width - 0.5, height - 0.5);
  }

  // Cell whose square footprint contains p, if any.
  std::optional<CellIndex> cell_at(const Point2& p) const;

  bool operator==(const GridGeometry& o) const {
    return width == o.width && height == o.height && cell_size == o.cell_size &&
           origin == o.origin;
  }
};

class OccupancyGrid {
 public:
  OccupancyGrid() = default;
  // All-free grid.
  explicit OccupancyGrid(GridGeometry geometry);
  OccupancyGrid(GridGeometry geometry, std::vector<std::uint8_t> cells);

  const GridGeometry& geometry() const { return geometry_; }
  int width() const { return geometry_.width; }
  int height() const { return geometry_.height; }
  double cell_size() const { return geometry_.cell_size; }

  bool occupied(int x, int y) const { return cells_[geometry_.index(x, y)] != 0; }
  void set(int x, int y, bool occupied) { cells_[geometry_.index(x, y)] = occupied ? 1 : 0; }
  // Points outside the raster count as free.
  bool occupied_at(const Point2& p) const;

  const std::vector<std::uint8_t>& cells() const { return cells_; }
  std::size_t occupied_count() const;

 private:
  GridGeometry geometry_;
  std::vector<std::uint8_t> cells_;
};

struct RasterSample {
  double value = 0.0;
  Point2 gradient = Point2::Zero();  // per meter
  bool clamped = false;              // query fell outside the sample lattice
};

// Scalar value per cell, sampled at cell centers.
class ScalarRaster {
 public:
  ScalarRaster() = default;
  ScalarRaster(GridGeometry geometry, std::vector<double> values);

  const GridGeometry& geometry() const { return geometry_; }
  double at(int x, int y) const { return values_[geometry_.index(x, y)]; }
  const std::vector<double>& values() const { return values_; }

  // Bilinear interpolation of the cell-center samples. Outside the lattice the
  // query point is clamped onto it; the gradient along a clamped axis is zero
  // so it stays consistent with the (constant) clamped value.
  RasterSample sample(const Point2& p) const;

 private:
  GridGeometry geometry_;
  std::vector<double> values_;
};

inline RasterSample query_bilinear(const ScalarRaster& raster, const Point2& p) {
  return raster.sample(p);
}

}  // namespace usvplan::fields
