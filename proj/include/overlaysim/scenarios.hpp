#pragma once

#include <string>
#include <vector>

#include "overlaysim/experiment.hpp"

namespace overlaysim {

// Preconfigured experiment matrix: three topologies x three failure modes,
// all protocols, 20 replicates, plus the degree-distribution comparison.
struct ScenarioDef {
    std::string name;
    std::string description;
    ExperimentConfig config;
    bool emit_original_degree_dist = false;
};

const std::vector<ScenarioDef>& scenario_registry();
const ScenarioDef* find_scenario(const std::string& name);
std::vector<std::string> scenario_names();

} // namespace overlaysim
