#include "usvplan/optimizer/serialize.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "usvplan/error.hpp"

namespace usvplan::optimizer {

nlohmann::json to_json(const PlanResult& r, bool include_timing) {
  using nlohmann::json;
  json j;
  j["planner"] = r.planner;
  j["length"] = r.length;
  j["collision_free"] = r.collision_free;
  j["min_clearance"] = r.min_clearance;
  j["mean_energy_rate"] = r.mean_energy_rate;
  if (include_timing) j["duration_ms"] = r.duration_ms;

  auto& support = j["support_states"] = json::array();
  for (const auto& s : r.support_states) {
    support.push_back(json::array({s[0], s[1], s[2], s[3]}));
  }
  auto& path = j["path"] = json::array();
  for (const auto& p : r.path) {
    path.push_back(json::array({p.t, p.position.x(), p.position.y(), p.velocity.x(), p.velocity.y()}));
  }
  auto& replans = j["replans"] = json::array();
  for (const auto& d : r.replans) {
    json e{{"iteration", d.iteration},
           {"length", d.length},
           {"objective", d.objective},
           {"interpolation_counts", d.interpolation_counts},
           {"collision_free", d.collision_free},
           {"min_clearance", d.min_clearance},
           {"accepted", d.accepted},
           {"lm_iterations", d.lm_iterations}};
    if (!d.failure.empty()) e["failure"] = d.failure;
    replans.push_back(std::move(e));
  }
  j["accepted_lengths"] = r.accepted_lengths();
  return j;
}

PlanResult plan_from_json(const nlohmann::json& j) {
  try {
    PlanResult r;
    r.planner = j.at("planner").get<std::string>();
    r.length = j.at("length").get<double>();
    r.collision_free = j.at("collision_free").get<bool>();
    r.min_clearance = j.at("min_clearance").get<double>();
    r.mean_energy_rate = j.value("mean_energy_rate", 0.0);
    r.duration_ms = j.value("duration_ms", 0.0);
    for (const auto& s : j.at("support_states")) {
      Vector v(4);
      for (int k = 0; k < 4; ++k) v[k] = s.at(k).get<double>();
      r.support_states.push_back(std::move(v));
    }
    for (const auto& p : j.at("path")) {
      r.path.push_back(PathPoint{p.at(0).get<double>(), Point2(p.at(1).get<double>(), p.at(2).get<double>()),
                                 Point2(p.at(3).get<double>(), p.at(4).get<double>())});
    }
    for (const auto& e : j.value("replans", nlohmann::json::array())) {
      ReplanDiagnostics d;
      d.iteration = e.at("iteration").get<int>();
      d.length = e.at("length").get<double>();
      d.objective = e.at("objective").get<double>();
      d.interpolation_counts = e.at("interpolation_counts").get<std::vector<int>>();
      d.collision_free = e.at("collision_free").get<bool>();
      d.min_clearance = e.at("min_clearance").get<double>();
      d.accepted = e.at("accepted").get<bool>();
      d.lm_iterations = e.at("lm_iterations").get<int>();
      d.failure = e.value("failure", std::string());
      r.replans.push_back(std::move(d));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed plan result: ") + e.what());
  }
}

std::string path_csv(const DensePath& path) {
  std::ostringstream out;
  out << std::setprecision(12) << "t,x,y,vx,vy\n";
  for (const auto& p : path) {
    out << p.t << ',' << p.position.x() << ',' << p.position.y() << ',' << p.velocity.x() << ','
        << p.velocity.y() << '\n';
  }
  return out.str();
}

void write_path_csv(const DensePath& path, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot write " + file.string());
  out << path_csv(path);
  if (!out) throw IoError("failed writing " + file.string());
}

void write_json(const nlohmann::json& j, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot write " + file.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + file.string());
}

nlohmann::json read_json(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open " + file.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(file.string() + ": " + e.what());
  }
}

}  // namespace usvplan::optimizer
