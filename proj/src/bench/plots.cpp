#include "usvplan/bench/plots.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "usvplan/error.hpp"
#include "usvplan/fields/io.hpp"
#include "usvplan/optimizer/serialize.hpp"

namespace usvplan::bench {

namespace {

std::string num(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

struct Panel {
  std::string title;
  std::string unit;
  std::vector<std::pair<std::string, std::vector<double>>> series;
};

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

}  // namespace

std::string overlay_svg(const fields::OccupancyGrid& grid, const fields::EnvironmentField* currents,
                        const std::vector<OverlayPath>& paths, const Point2& start,
                        const Point2& goal, int quiver_step) {
  const auto& g = grid.geometry();
  const Point2 lo = g.lower_corner();
  const Point2 hi = g.upper_corner();
  const double w = hi.x() - lo.x();
  const double h = hi.y() - lo.y();
  // World y grows upwards; SVG y grows downwards. Shift so lo maps to (0, h).
  auto sx = [&](double x) { return num(x - lo.x()); };
  auto sy = [&](double y) { return num(hi.y() - y); };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
      << "\" viewBox=\"0 0 " << num(w) << ' ' << num(h) << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << num(w) << "\" height=\"" << num(h)
      << "\" fill=\"#ffffff\"/>\n<g fill=\"#404040\">\n";
  const double cs = g.cell_size;
  for (int y = 0; y < g.height; ++y) {
    for (int x = 0; x < g.width;) {
      if (!grid.occupied(x, y)) {
        ++x;
        continue;
      }
      int end = x;
      while (end < g.width && grid.occupied(end, y)) ++end;
      const Point2 c = g.cell_center(x, y);
      out << "<rect x=\"" << sx(c.x() - 0.5 * cs) << "\" y=\"" << sy(c.y() + 0.5 * cs)
          << "\" width=\"" << num((end - x) * cs) << "\" height=\"" << num(cs) << "\"/>\n";
      x = end;
    }
  }
  out << "</g>\n";

  if (currents != nullptr && quiver_step > 0) {
    const double vmax = std::max(currents->max_current_speed(), 1e-9);
    const double scale = 0.8 * quiver_step * cs / vmax;
    out << "<g stroke=\"#6baed6\" stroke-width=\"1\">\n";
    for (int y = quiver_step / 2; y < g.height; y += quiver_step) {
      for (int x = quiver_step / 2; x < g.width; x += quiver_step) {
        const Point2 p = g.cell_center(x, y);
        const auto& c = currents->current_at(x, y);
        if (c.norm() < 1e-3 * vmax) continue;
        const Point2 q = p + scale * c;
        out << "<line x1=\"" << sx(p.x()) << "\" y1=\"" << sy(p.y()) << "\" x2=\"" << sx(q.x())
            << "\" y2=\"" << sy(q.y()) << "\"/>\n";
      }
    }
    out << "</g>\n";
  }

  for (const auto& path : paths) {
    out << "<polyline fill=\"none\" stroke=\"" << path.color << "\" stroke-width=\"2\" points=\"";
    for (const auto& p : path.points) out << sx(p.x()) << ',' << sy(p.y()) << ' ';
    out << "\"><title>" << path.label << "</title></polyline>\n";
  }
  out << "<circle cx=\"" << sx(start.x()) << "\" cy=\"" << sy(start.y())
      << "\" r=\"5\" fill=\"#2ca02c\"/>\n"
      << "<circle cx=\"" << sx(goal.x()) << "\" cy=\"" << sy(goal.y())
      << "\" r=\"5\" fill=\"#1f77b4\"/>\n";
  double legend_y = 16.0;
  for (const auto& path : paths) {
    out << "<text x=\"8\" y=\"" << num(legend_y) << "\" font-size=\"12\" fill=\"" << path.color
        << "\">" << path.label << "</text>\n";
    legend_y += 14.0;
  }
  out << "</svg>\n";
  return out.str();
}

namespace {

std::string panels_svg(const std::vector<double>& t, const std::vector<Panel>& panels) {
  const double width = 720.0;
  const double panel_h = 180.0;
  const double margin = 48.0;
  const double height = panel_h * static_cast<double>(panels.size());
  const double t0 = t.empty() ? 0.0 : t.front();
  const double t1 = t.empty() ? 1.0 : std::max(t.back(), t0 + 1e-9);

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\">\n<rect x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" fill=\"#ffffff\"/>\n";
  for (std::size_t k = 0; k < panels.size(); ++k) {
    const auto& panel = panels[k];
    const double top = panel_h * static_cast<double>(k);
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (const auto& [name, v] : panel.series) {
      for (double x : v) {
        lo = first ? x : std::min(lo, x);
        hi = first ? x : std::max(hi, x);
        first = false;
      }
    }
    if (hi - lo < 1e-9) hi = lo + 1.0;
    const double px0 = margin, px1 = width - 12.0;
    const double py0 = top + panel_h - 24.0, py1 = top + 20.0;
    auto X = [&](double tt) { return px0 + (tt - t0) / (t1 - t0) * (px1 - px0); };
    auto Y = [&](double v) { return py0 + (v - lo) / (hi - lo) * (py1 - py0); };
    out << "<text x=\"" << num(px0) << "\" y=\"" << num(top + 14.0) << "\" font-size=\"12\">"
        << panel.title << " [" << panel.unit << "] range " << num(lo) << " .. " << num(hi)
        << "</text>\n<rect x=\"" << num(px0) << "\" y=\"" << num(py1) << "\" width=\""
        << num(px1 - px0) << "\" height=\"" << num(py0 - py1)
        << "\" fill=\"none\" stroke=\"#999999\"/>\n";
    std::size_t c = 0;
    for (const auto& [name, v] : panel.series) {
      // Decimate long series to about one vertex per horizontal pixel.
      const std::size_t stride = std::max<std::size_t>(1, v.size() / 700);
      out << "<polyline fill=\"none\" stroke=\"" << kColors[c % 5]
          << "\" stroke-width=\"1.2\" points=\"";
      for (std::size_t i = 0; i < v.size(); i += stride) out << num(X(t[i])) << ',' << num(Y(v[i])) << ' ';
      out << "\"><title>" << name << "</title></polyline>\n";
      ++c;
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace

std::string mission_svg(const sim::MissionLog& log) {
  std::vector<double> t;
  Panel xt{"cross-track error", "m", {{"cross_track", {}}}};
  Panel heading{"heading", "deg", {{"psi_d", {}}, {"psi", {}}}};
  Panel speed{"speed", "m/s", {{"V_d", {}}, {"V", {}}}};
  constexpr double deg = 180.0 / 3.14159265358979323846;
  for (const auto& s : log.samples) {
    t.push_back(s.t);
    xt.series[0].second.push_back(s.cross_track);
    heading.series[0].second.push_back(s.desired_heading * deg);
    heading.series[1].second.push_back(s.heading * deg);
    speed.series[0].second.push_back(s.desired_speed);
    speed.series[1].second.push_back(s.speed);
  }
  return panels_svg(t, {xt, heading, speed});
}

std::string replan_csv(const optimizer::PlanResult& result) {
  std::ostringstream out;
  out.precision(17);
  out << "iteration,length,objective,collision_free,min_clearance,accepted,lm_iterations,"
         "interpolation_counts,failure\n";
  for (const auto& d : result.replans) {
    out << d.iteration << ',' << d.length << ',' << d.objective << ',' << (d.collision_free ? 1 : 0)
        << ',' << d.min_clearance << ',' << (d.accepted ? 1 : 0) << ',' << d.lm_iterations << ',';
    for (std::size_t i = 0; i < d.interpolation_counts.size(); ++i) {
      out << (i ? ";" : "") << d.interpolation_counts[i];
    }
    std::string failure = d.failure;
    std::replace(failure.begin(), failure.end(), ',', ';');
    std::replace(failure.begin(), failure.end(), '\n', ' ');
    out << ',' << failure << '\n';
  }
  return out.str();
}

std::string replan_svg(const optimizer::PlanResult& result) {
  std::vector<double> it;
  Panel all{"candidate length", "m", {{"length", {}}}};
  Panel best{"accepted length", "m", {{"incumbent", {}}}};
  // Before the first acceptance the curve follows the candidates.
  bool have = false;
  double incumbent = 0.0;
  for (const auto& d : result.replans) {
    it.push_back(d.iteration);
    all.series[0].second.push_back(d.length);
    if (d.accepted) {
      have = true;
      incumbent = d.length;
    }
    best.series[0].second.push_back(have ? incumbent : d.length);
  }
  return panels_svg(it, {all, best});
}

void write_text(const std::string& text, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot write " + file.string());
  out << text;
  if (!out) throw IoError("write failed: " + file.string());
}

std::string file_tag(const std::string& planner) {
  std::string out;
  for (char c : planner) out += c == '*' ? std::string("star") : std::string(1, c);
  return out;
}

std::vector<std::filesystem::path> emit_plots(const BenchReport& report,
                                              const std::vector<Scenario>& scenarios,
                                              const std::filesystem::path& out_dir) {
  if (report.rows.empty()) throw InvalidInput("emit_plots: empty report");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  std::map<std::string, const Scenario*> by_name;
  for (const auto& s : scenarios) by_name[s.name] = &s;

  struct Loaded {
    fields::OccupancyGrid grid;
    std::optional<fields::EnvironmentField> env;
  };
  std::map<std::string, Loaded> cache;
  std::vector<std::filesystem::path> written;
  for (const auto& row : report.rows) {
    const RunRecord* run = row.first_success();
    if (run == nullptr || !run->result) continue;
    auto it = by_name.find(row.scenario);
    if (it == by_name.end()) throw InvalidInput("emit_plots: no scenario named " + row.scenario);
    const Scenario& s = *it->second;
    auto [entry, fresh] = cache.try_emplace(s.name);
    if (fresh) {
      entry->second.grid = fields::load_pgm(s.map_file);
      if (s.currents) entry->second.env = fields::synth_vortex_field(*s.currents, entry->second.grid.geometry());
    }
    const auto& loaded = entry->second;
    const auto stem = s.name + "_" + file_tag(row.planner);
    const auto svg = out_dir / (stem + ".svg");
    const auto csv = out_dir / (stem + ".csv");
    write_text(overlay_svg(loaded.grid, loaded.env ? &*loaded.env : nullptr,
                           {{row.planner, optimizer::positions(run->result->path), kColors[1]}},
                           s.start, s.goal),
               svg);
    optimizer::write_path_csv(run->result->path, csv);
    written.push_back(svg);
    written.push_back(csv);
  }
  return written;
}

}  // namespace usvplan::bench
