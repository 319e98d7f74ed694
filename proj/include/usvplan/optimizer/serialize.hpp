#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "usvplan/optimizer/planner.hpp"

namespace usvplan::optimizer {

// {"planner", "length", "collision_free", "min_clearance", "mean_energy_rate",
//  "duration_ms", "support_states": [[x,y,vx,vy]...],
//  "path": [[t,x,y,vx,vy]...], "replans": [...]}
nlohmann::json to_json(const PlanResult& result, bool include_timing = true);
PlanResult plan_from_json(const nlohmann::json& j);

// Header "t,x,y,vx,vy", one dense state per line.
void write_path_csv(const DensePath& path, const std::filesystem::path& file);
std::string path_csv(const DensePath& path);

void write_json(const nlohmann::json& j, const std::filesystem::path& file);
nlohmann::json read_json(const std::filesystem::path& file);

}  // namespace usvplan::optimizer
