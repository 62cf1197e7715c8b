#pragma once

#include <string>
#include <vector>

#include "nav3d/simulator.hpp"

namespace nav3d {

// A complete simulation setup loaded from a JSON scenario file. The schema
// is documented in the README; loading performs structural validation and
// throws ScenarioError with field context on malformed input.
struct Scenario {
    std::string name;
    World world;
    ControllerParams params;
    SimConfig sim;
    std::vector<HybridState> initial_states;

    static Scenario from_json_text(const std::string& text);
    static Scenario load(const std::string& path);

    FeasibilityReport validate() const {
        return nav3d::validate(world, params.gamma, params.gamma_a, params.gamma_s,
                               params.epsilon);
    }
};

}  // namespace nav3d
