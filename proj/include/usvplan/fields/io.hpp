#pragma once

#include <filesystem>

#include "usvplan/fields/environment.hpp"
#include "usvplan/fields/grid.hpp"

namespace usvplan::fields {

// Binary PGM (P5, maxval <= 255). Pixels >= 128 are obstacles. Image row 0
// is the top of the map (largest y). A header comment of the form
// "# cell_size <meters>" overrides the default 1.0 m per pixel.
OccupancyGrid load_pgm(const std::filesystem::path& path);
void save_pgm(const OccupancyGrid& grid, const std::filesystem::path& path);

// One CSV line per raster row (y ascending), one value per cell.
void write_raster_csv(const ScalarRaster& raster, const std::filesystem::path& path);
// Rows of "x,y,cx,cy" for every cell.
void write_current_csv(const EnvironmentField& field, const std::filesystem::path& path);

}  // namespace usvplan::fields
