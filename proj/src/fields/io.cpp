#include "usvplan/fields/io.hpp"

#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "usvplan/error.hpp"

namespace usvplan::fields {
namespace {

// Reads the next whitespace-delimited header token, collecting comments.
std::string next_token(std::istream& in, double& cell_size) {
  std::string token;
  while (in) {
    const int c = in.peek();
    if (c == EOF) break;
    if (c == '#') {
      std::string comment;
      std::getline(in, comment);
      std::istringstream cs(comment.substr(1));
      std::string key;
      double value = 0.0;
      if (cs >> key >> value && (key == "cell_size" || key == "cell_size:") && value > 0.0) {
        cell_size = value;
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!token.empty()) break;
      in.get();
      continue;
    }
    token.push_back(static_cast<char>(in.get()));
  }
  return token;
}

int parse_int(const std::string& s, const std::filesystem::path& path, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw IoError(path.string() + ": malformed PGM " + what + " '" + s + "'");
  }
}

}  // namespace

OccupancyGrid load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open map " + path.string());
  double cell_size = 1.0;
  if (next_token(in, cell_size) != "P5") {
    throw IoError(path.string() + ": not a binary PGM (P5) file");
  }
  const int width = parse_int(next_token(in, cell_size), path, "width");
  const int height = parse_int(next_token(in, cell_size), path, "height");
  const int maxval = parse_int(next_token(in, cell_size), path, "maxval");
  if (width <= 0 || height <= 0) throw IoError(path.string() + ": empty PGM image");
  if (maxval <= 0 || maxval > 255) throw IoError(path.string() + ": only 8-bit PGM is supported");
  in.get();  // single whitespace byte after maxval

  std::vector<unsigned char> pixels(static_cast<std::size_t>(width) * height);
  in.read(reinterpret_cast<char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(pixels.size())) {
    throw IoError(path.string() + ": truncated PGM pixel data");
  }

  GridGeometry g{width, height, cell_size, Point2::Zero()};
  std::vector<std::uint8_t> cells(pixels.size());
  for (int row = 0; row < height; ++row) {
    const int y = height - 1 - row;
    for (int x = 0; x < width; ++x) {
      cells[g.index(x, y)] = pixels[static_cast<std::size_t>(row) * width + x] >= 128 ? 1 : 0;
    }
  }
  return OccupancyGrid(g, std::move(cells));
}

void save_pgm(const OccupancyGrid& grid, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write map " + path.string());
  const auto& g = grid.geometry();
  out << "P5\n# cell_size " << std::setprecision(17) << g.cell_size << "\n"
      << g.width << ' ' << g.height << "\n255\n";
  std::vector<unsigned char> row(g.width);
  for (int r = 0; r < g.height; ++r) {
    const int y = g.height - 1 - r;
    for (int x = 0; x < g.width; ++x) row[x] = grid.occupied(x, y) ? 255 : 0;
    out.write(reinterpret_cast<const char*>(row.data()), g.width);
  }
  if (!out) throw IoError("failed writing map " + path.string());
}

void write_raster_csv(const ScalarRaster& raster, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << std::setprecision(10);
  const auto& g = raster.geometry();
  for (int y = 0; y < g.height; ++y) {
    for (int x = 0; x < g.width; ++x) {
      if (x) out << ',';
      out << raster.at(x, y);
    }
    out << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

void write_current_csv(const EnvironmentField& field, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << std::setprecision(10) << "x,y,cx,cy\n";
  const auto& g = field.geometry();
  for (int y = 0; y < g.height; ++y) {
    for (int x = 0; x < g.width; ++x) {
      const Point2 p = g.cell_center(x, y);
      const auto& c = field.current_at(x, y);
      out << p.x() << ',' << p.y() << ',' << c.x() << ',' << c.y() << '\n';
    }
  }
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace usvplan::fields
