#pragma once

#include <vector>

#include "nav3d/scenario.hpp"
#include "nav3d/simulator.hpp"

namespace nav3d {

struct RunResult {
    HybridTrajectory traj;
    AuditReport audit;
};

AuditOptions audit_options_for(const Scenario& sc);

// Runs every initial state of the scenario; independent runs are dispatched
// to parallel workers. Results are ordered like the initial states.
std::vector<RunResult> run_scenario(const Scenario& sc);

}  // namespace nav3d
