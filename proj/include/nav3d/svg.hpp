#pragma once

#include <string>
#include <vector>

#include "nav3d/simulator.hpp"
#include "nav3d/world.hpp"

namespace nav3d {

// Distance-to-obstacle-union vs time, one polyline per trajectory, with a
// dashed reference line at r_a.
std::string distance_plot_svg(const std::vector<const HybridTrajectory*>& trajectories,
                              double r_a);

// Orthographic (isometric) projection of the trajectories with mode-colored
// segments: red while moving to the target, blue while avoiding. Obstacles
// are drawn as wireframes/circles, the target as a cross, starts as
// diamonds.
std::string trajectory_plot_svg(const World& world,
                                const std::vector<const HybridTrajectory*>& trajectories);

}  // namespace nav3d
