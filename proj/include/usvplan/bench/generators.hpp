#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "usvplan/bench/scenario.hpp"

namespace usvplan::bench {

// Built-in scenario families: problem1 (empty), problem2 (single obstacle),
// problem3 (multiple obstacles), problem4 (narrow passage), problem5
// (synthetic coastline). Names are "problem<k>[-currents]-<resolution>" with
// resolution 500, 1000 or 2000.
struct BuiltinSpec {
  int problem = 1;
  bool currents = false;
  int resolution = 500;

  std::string name() const;
};

std::vector<std::string> builtin_names();
// Throws InvalidInput listing the valid names.
BuiltinSpec parse_builtin(const std::string& name);

struct GeneratedScenario {
  Scenario scenario;
  fields::OccupancyGrid grid;
};

// Map plus a scenario carrying the parameter row for the resolution. The map
// file is named "<name>.pgm".
GeneratedScenario generate(const BuiltinSpec& spec);

// Writes <name>.pgm and <name>.json into dir; returns the scenario path.
std::filesystem::path write_generated(const GeneratedScenario& g, const std::filesystem::path& dir);

}  // namespace usvplan::bench
