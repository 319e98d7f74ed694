#include "usvplan/bench/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <limits>
#include <sstream>
#include <thread>

#include "usvplan/baselines/astar.hpp"
#include "usvplan/baselines/common.hpp"
#include "usvplan/baselines/fmm.hpp"
#include "usvplan/baselines/rrt_star.hpp"
#include "usvplan/error.hpp"
#include "usvplan/fields/io.hpp"

namespace usvplan::bench {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

double timeout_for(const Scenario& s, double timeout_s) {
  return timeout_s > 0.0 ? timeout_s : s.params.timeout_s;
}

}  // namespace

const std::vector<std::string>& planner_names() {
  static const std::vector<std::string> names = {"mc-gpmp2*", "gpmp2", "astar", "rrt*", "fmm"};
  return names;
}

void check_planner(const std::string& planner) {
  const auto& names = planner_names();
  if (std::find(names.begin(), names.end(), planner) != names.end()) return;
  std::string msg = "unknown planner '" + planner + "'; expected one of:";
  for (const auto& n : names) msg += " " + n;
  throw InvalidInput(msg);
}

optimizer::PlannerParams planner_params(const Scenario& s) {
  optimizer::PlannerParams p;
  p.total_time = s.params.t_max;
  p.segments = s.params.segments;
  p.qc = s.params.qc;
  p.body_radius = s.params.body_radius;
  p.graph.epsilon = s.params.epsilon;
  p.graph.sigma_obs = s.params.sigma_obs;
  p.graph.sigma_env = s.params.sigma_env;
  p.graph.lambda = s.params.lambda;
  p.graph.mc_samples = s.params.mc_samples;
  p.graph.fixed_interpolation = s.params.fixed_interpolation;
  return p;
}

std::shared_ptr<const graph::PlanningFields> build_fields(const Scenario& s,
                                                          fields::OccupancyGrid grid) {
  optimizer::require_free(grid, s.start, "start");
  optimizer::require_free(grid, s.goal, "goal");
  return graph::PlanningFields::build(std::move(grid), s.currents ? &*s.currents : nullptr);
}

std::shared_ptr<const graph::PlanningFields> build_fields(const Scenario& s) {
  return build_fields(s, fields::load_pgm(s.map_file));
}

optimizer::PlanResult run_planner(const std::string& planner, const Scenario& s,
                                  std::shared_ptr<const graph::PlanningFields> fields,
                                  std::uint64_t seed, double timeout_s) {
  check_planner(planner);
  const double timeout = timeout_for(s, timeout_s);
  const auto& p = s.params;
  optimizer::PlanResult r;

  if (planner == "mc-gpmp2*") {
    r = optimizer::mc_gpmp2_star(s.start, s.goal, fields, planner_params(s), s.replans, seed);
  } else if (planner == "gpmp2") {
    r = optimizer::gpmp2_plan(s.start, s.goal, fields, planner_params(s));
  } else if (planner == "astar") {
    baselines::GridSearchParams gp{p.step, p.epsilon, timeout};
    const auto t0 = Clock::now();
    const auto a = baselines::astar_plan(fields->sdf, s.start, s.goal, gp);
    r = baselines::polyline_result(planner, a.path, *fields, p.body_radius, p.t_max, ms_since(t0));
  } else if (planner == "rrt*") {
    baselines::RrtStarParams rp;
    rp.step = p.step;
    rp.goal_bias = p.rrt_goal_bias;
    rp.max_samples = p.rrt_max_samples;
    rp.inflation = p.epsilon;
    rp.timeout_s = timeout;
    const auto t0 = Clock::now();
    const auto a = baselines::rrt_star_plan(fields->sdf, s.start, s.goal, rp, seed);
    r = baselines::polyline_result(planner, a.path, *fields, p.body_radius, p.t_max, ms_since(t0));
  } else {
    baselines::FmmParams fp{p.fmm_beta, p.epsilon, p.fmm_block};
    const auto t0 = Clock::now();
    const auto a = baselines::fmm_plan(fields->sdf, fields->environment, s.start, s.goal, fp);
    r = baselines::polyline_result(planner, a.path, *fields, p.body_radius, p.t_max, ms_since(t0));
  }
  if (r.duration_ms > 1000.0 * timeout) {
    throw PlanningFailed("timeout", planner + " exceeded " + std::to_string(timeout) + " s");
  }
  return r;
}

const RunRecord* BenchRow::first_success() const {
  for (const auto& r : runs) {
    if (r.success) return &r;
  }
  return nullptr;
}

const BenchRow* BenchReport::find(const std::string& scenario, const std::string& planner) const {
  for (const auto& row : rows) {
    if (row.scenario == scenario && row.planner == planner) return &row;
  }
  return nullptr;
}

namespace {

nlohmann::json stat_json(const Stat& s) { return {{"mean", s.mean}, {"min", s.min}, {"max", s.max}}; }

Stat summarize(const std::vector<double>& v) {
  if (v.empty()) return {};
  Stat s{0.0, v.front(), v.front()};
  for (double x : v) {
    s.mean += x;
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
  }
  s.mean /= static_cast<double>(v.size());
  // Guard the invariant min <= mean <= max against rounding.
  s.mean = std::clamp(s.mean, s.min, s.max);
  return s;
}

}  // namespace

nlohmann::json BenchReport::to_json(bool include_timing) const {
  nlohmann::json j;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json r{{"scenario", row.scenario},
                     {"planner", row.planner},
                     {"success", row.success()},
                     {"successes", row.successes},
                     {"failures", row.failures},
                     {"length", stat_json(row.length)},
                     {"energy_rate_pct", stat_json(row.energy_rate_pct)},
                     {"smoothness", stat_json(row.smoothness)}};
    if (include_timing) r["time_ms"] = stat_json(row.time_ms);
    r["runs"] = nlohmann::json::array();
    for (const auto& run : row.runs) {
      nlohmann::json x{{"repetition", run.repetition},
                       {"seed", run.seed},
                       {"success", run.success},
                       {"failure", run.failure},
                       {"length", run.length},
                       {"energy_rate_pct", run.energy_rate_pct},
                       {"smoothness", run.smoothness},
                       {"min_clearance", run.min_clearance}};
      if (include_timing) x["time_ms"] = run.time_ms;
      r["runs"].push_back(std::move(x));
    }
    j["rows"].push_back(std::move(r));
  }
  if (include_timing) {
    j["fields"] = nlohmann::json::array();
    for (const auto& f : fields) j["fields"].push_back({{"scenario", f.scenario}, {"field_ms", f.field_ms}});
  }
  return j;
}

std::string BenchReport::csv(bool include_timing) const {
  std::ostringstream out;
  out << std::setprecision(10);
  out << "scenario,planner,success,successes,failures";
  if (include_timing) out << ",time_ms_mean,time_ms_min,time_ms_max";
  out << ",length_mean,length_min,length_max,energy_rate_pct_mean,energy_rate_pct_min,"
         "energy_rate_pct_max,smoothness_mean,smoothness_min,smoothness_max\n";
  auto put = [&](const Stat& s) { out << ',' << s.mean << ',' << s.min << ',' << s.max; };
  for (const auto& row : rows) {
    out << row.scenario << ',' << row.planner << ',' << (row.success() ? 1 : 0) << ','
        << row.successes << ',' << row.failures;
    if (include_timing) put(row.time_ms);
    put(row.length);
    put(row.energy_rate_pct);
    put(row.smoothness);
    out << '\n';
  }
  return out.str();
}

BenchReport run_benchmark(const std::vector<Scenario>& scenarios, const BenchOptions& options) {
  if (scenarios.empty()) throw InvalidInput("no scenarios to benchmark");
  if (options.planners.empty()) throw InvalidInput("no planners selected");
  for (const auto& p : options.planners) check_planner(p);

  // Everything that can be wrong with the inputs surfaces here, before any run.
  BenchReport report;
  std::vector<std::shared_ptr<const graph::PlanningFields>> fields;
  for (const auto& s : scenarios) {
    try {
      validate(s);
      auto grid = fields::load_pgm(s.map_file);
      const auto t0 = Clock::now();
      fields.push_back(build_fields(s, std::move(grid)));
      report.fields.push_back({s.name, ms_since(t0)});
    } catch (const Error& e) {
      throw InvalidInput("scenario '" + s.name + "': " + e.what());
    }
  }

  struct Task {
    std::size_t row;
    std::size_t scenario;
    int rep;
  };
  std::vector<Task> tasks;
  for (std::size_t si = 0; si < scenarios.size(); ++si) {
    const int reps = options.repetitions > 0 ? options.repetitions : scenarios[si].repetitions;
    for (const auto& planner : options.planners) {
      BenchRow row;
      row.scenario = scenarios[si].name;
      row.planner = planner;
      row.runs.resize(static_cast<std::size_t>(reps));
      for (int k = 0; k < reps; ++k) tasks.push_back({report.rows.size(), si, k});
      report.rows.push_back(std::move(row));
    }
  }

  auto execute = [&](const Task& t) {
    const Scenario& s = scenarios[t.scenario];
    BenchRow& row = report.rows[t.row];
    RunRecord& rec = row.runs[static_cast<std::size_t>(t.rep)];
    rec.repetition = t.rep;
    rec.seed = repetition_seed(s.seed, t.rep);
    try {
      auto r = std::make_shared<optimizer::PlanResult>(
          run_planner(row.planner, s, fields[t.scenario], rec.seed, options.timeout_s));
      rec.time_ms = r->duration_ms;
      rec.length = r->length;
      rec.energy_rate_pct = 100.0 * r->mean_energy_rate;
      rec.smoothness = optimizer::mean_turn_angle(optimizer::positions(r->path));
      rec.min_clearance = r->min_clearance;
      rec.success = r->collision_free;
      if (!rec.success) rec.failure = "collision";
      rec.result = std::move(r);
    } catch (const PlanningFailed& e) {
      rec.failure = e.reason();
    } catch (const Error& e) {
      rec.failure = e.what();
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned jobs = options.jobs > 0 ? static_cast<unsigned>(options.jobs) : hw;
  if (jobs <= 1 || tasks.size() <= 1) {
    for (const auto& t : tasks) execute(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < std::min<std::size_t>(jobs, tasks.size()); ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) execute(tasks[i]);
      });
    }
    for (auto& th : pool) th.join();
  }

  for (auto& row : report.rows) {
    std::vector<double> time, length, energy, smooth;
    for (const auto& r : row.runs) {
      if (!r.success) {
        ++row.failures;
        continue;
      }
      ++row.successes;
      time.push_back(r.time_ms);
      length.push_back(r.length);
      energy.push_back(r.energy_rate_pct);
      smooth.push_back(r.smoothness);
    }
    row.time_ms = summarize(time);
    row.length = summarize(length);
    row.energy_rate_pct = summarize(energy);
    row.smoothness = summarize(smooth);
  }
  return report;
}

sim::MissionPath to_mission_path(const optimizer::DensePath& path, double spacing) {
  sim::MissionPath m;
  if (path.empty()) return m;
  m.waypoints.push_back(path.front().position);
  m.times.push_back(path.front().t);
  for (std::size_t i = 1; i < path.size(); ++i) {
    const bool last = i + 1 == path.size();
    if (last || (path[i].position - m.waypoints.back()).norm() >= spacing) {
      m.waypoints.push_back(path[i].position);
      m.times.push_back(path[i].t);
    }
  }
  if (m.waypoints.size() == 1) {
    m.waypoints.push_back(m.waypoints.front());
    m.times.push_back(m.times.front());
  }
  return m;
}

}  // namespace usvplan::bench
