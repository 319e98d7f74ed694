#include "usvplan/bench/generators.hpp"

#include <cmath>
#include <numbers>
#include <regex>

#include "usvplan/error.hpp"
#include "usvplan/fields/io.hpp"

namespace usvplan::bench {

namespace {

constexpr int kResolutions[] = {500, 1000, 2000};

// Geometry is laid out on a 500-pixel canvas and scaled by resolution / 500.
struct Canvas {
  fields::OccupancyGrid grid;
  double scale = 1.0;

  Point2 at(double x, double y) const { return Point2(x * scale, y * scale); }

  void disc(double cx, double cy, double r) {
    const Point2 c = at(cx, cy);
    const double rr = r * scale;
    for (int y = 0; y < grid.height(); ++y) {
      for (int x = 0; x < grid.width(); ++x) {
        if ((Point2(x, y) - c).squaredNorm() <= rr * rr) grid.set(x, y, true);
      }
    }
  }

  void rect(double x0, double y0, double x1, double y1) {
    for (int y = 0; y < grid.height(); ++y) {
      for (int x = 0; x < grid.width(); ++x) {
        const double bx = x / scale, by = y / scale;
        if (bx >= x0 && bx < x1 && by >= y0 && by < y1) grid.set(x, y, true);
      }
    }
  }

  void ellipse(double cx, double cy, double ax, double ay) {
    for (int y = 0; y < grid.height(); ++y) {
      for (int x = 0; x < grid.width(); ++x) {
        const double dx = (x / scale - cx) / ax, dy = (y / scale - cy) / ay;
        if (dx * dx + dy * dy <= 1.0) grid.set(x, y, true);
      }
    }
  }

  // Fills every cell below the curve y = f(x), both in base units.
  template <class F>
  void below(F f) {
    for (int y = 0; y < grid.height(); ++y) {
      for (int x = 0; x < grid.width(); ++x) {
        if (y / scale < f(x / scale)) grid.set(x, y, true);
      }
    }
  }
};

// Circulation giving the requested peak tangential speed for a core radius.
double circulation_for_peak(double peak_speed, double core_radius) {
  // The Lamb-Oseen profile peaks at r = 1.12091 rc with (1 - e^{-r^2/rc^2}) / r = 0.638173 / rc.
  return peak_speed * 2.0 * std::numbers::pi * core_radius / 0.638173;
}

fields::Vortex vortex(const Canvas& c, double x, double y, double core, double peak) {
  return fields::Vortex{c.at(x, y), circulation_for_peak(peak, core * c.scale), core * c.scale};
}

ScenarioParams resolution_params(int resolution) {
  ScenarioParams p;
  switch (resolution) {
    case 500: p.t_max = 2.0; p.segments = 5; break;
    case 1000: p.t_max = 4.0; p.segments = 10; break;
    default: p.t_max = 8.0; p.segments = 20; break;
  }
  return p;
}

}  // namespace

std::string BuiltinSpec::name() const {
  return "problem" + std::to_string(problem) + (currents ? "-currents-" : "-") +
         std::to_string(resolution);
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (int p = 1; p <= 5; ++p) {
    for (bool c : {false, true}) {
      for (int r : kResolutions) out.push_back(BuiltinSpec{p, c, r}.name());
    }
  }
  return out;
}

BuiltinSpec parse_builtin(const std::string& name) {
  static const std::regex re(R"(problem([1-5])(-currents)?-(500|1000|2000))");
  std::smatch m;
  if (!std::regex_match(name, m, re)) {
    std::string msg = "unknown scenario '" + name + "'; valid names are problem<1-5>[-currents]-<500|1000|2000>";
    throw InvalidInput(msg);
  }
  return BuiltinSpec{std::stoi(m[1].str()), m[2].matched, std::stoi(m[3].str())};
}

GeneratedScenario generate(const BuiltinSpec& spec) {
  bool valid_res = false;
  for (int r : kResolutions) valid_res = valid_res || r == spec.resolution;
  if (spec.problem < 1 || spec.problem > 5 || !valid_res) throw InvalidInput("invalid builtin spec " + spec.name());

  Canvas c;
  c.scale = spec.resolution / 500.0;
  c.grid = fields::OccupancyGrid(fields::GridGeometry{spec.resolution, spec.resolution, 1.0, Point2::Zero()});

  Scenario s;
  s.name = spec.name();
  s.map_file = s.name + ".pgm";
  s.params = resolution_params(spec.resolution);
  s.start = c.at(75, 75);
  s.goal = c.at(429, 429);

  fields::VortexSpec currents;
  switch (spec.problem) {
    case 1:
      currents.vortices = {vortex(c, 225, 290, 60, 2.0)};
      break;
    case 2:
      c.disc(262, 238, 70);
      currents.vortices = {vortex(c, 340, 330, 45, 2.0)};
      break;
    case 3:
      c.disc(165, 150, 34);
      c.disc(258, 248, 42);
      c.disc(352, 335, 32);
      c.disc(120, 300, 40);
      c.disc(330, 150, 40);
      c.disc(240, 420, 30);
      c.disc(420, 250, 30);
      c.disc(220, 200, 12);
      c.disc(300, 285, 12);
      currents.vortices = {vortex(c, 300, 215, 40, 2.0)};
      break;
    case 4:
      // Two masses separated by one corridor 60 px wide.
      c.rect(220, 0, 280, 235);
      c.rect(220, 295, 280, 500);
      // Counter-rotating pair driving a jet through the corridor.
      currents.vortices = {vortex(c, 250, 305, 20, 6.4), vortex(c, 250, 225, 20, -6.4)};
      break;
    case 5:
      // Coastline with an archipelago between start and goal.
      s.start = c.at(130, 190);
      s.goal = c.at(370, 190);
      s.params.lambda = 20.0;
      s.params.mc_samples = 32;
      s.params.fixed_interpolation = 20;
      c.below([](double x) { return 105.0 + 15.0 * std::sin(2.0 * std::numbers::pi * x / 160.0); });
      c.disc(204, 209, 10);
      c.disc(300, 193, 15);
      c.disc(238, 275, 15);
      c.disc(170, 268, 9);
      c.disc(321, 314, 12);
      c.disc(231, 163, 15);
      c.disc(327, 258, 10);
      c.disc(170, 160, 11);
      c.disc(184, 319, 11);
      c.disc(254, 223, 11);
      currents.vortices = {vortex(c, 250, 400, 50, 2.0)};
      break;
    default:
      break;
  }
  if (spec.currents) s.currents = currents;
  return GeneratedScenario{std::move(s), std::move(c.grid)};
}

std::filesystem::path write_generated(const GeneratedScenario& g, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  fields::save_pgm(g.grid, dir / g.scenario.map_file);
  const auto file = dir / (g.scenario.name + ".json");
  save_scenario(g.scenario, file);
  return file;
}

}  // namespace usvplan::bench
