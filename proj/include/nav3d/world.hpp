#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nav3d/geometry.hpp"
#include "nav3d/shapes.hpp"

namespace nav3d {

// Workspace with obstacles. Obstacle index 0 is reserved for the complement
// of the workspace interior when the workspace is a bounded box; indices
// 1..b are the convex obstacles. The target is the origin.
struct World {
    std::optional<HalfspaceBox> workspace;  // nullopt: unbounded workspace
    std::vector<ConvexShape> obstacles;
    double robot_radius = 0.0;   // r
    double safety_margin = 0.0;  // r_s

    bool bounded() const { return workspace.has_value(); }
    int obstacle_count() const { return static_cast<int>(obstacles.size()); }
    double augmented_radius() const { return robot_radius + safety_margin; }

    // Distance / closest point for obstacle `index` (0 = workspace boundary).
    double obstacle_distance(int index, const Vec3& x) const;
    Vec3 obstacle_projection(int index, const Vec3& x) const;

    const ConvexShape& obstacle(int index) const { return obstacles.at(index - 1); }
};

struct NearestHit {
    int obstacle_index = -1;  // 0 = workspace boundary
    double distance = 0.0;
    Vec3 projection;
    Vec3 x_pi;  // x - projection
};

struct FeasibilityReport {
    double min_pair_separation = 0.0;  // min distance between obstacle pairs
    double d0 = 0.0;                   // d(0, obstacle union) - r
    double r_bar_s = 0.0;              // min(min_pair_separation/2 - r, d(0, union) - r)
    bool ok = false;
    std::vector<std::string> violations;
    std::vector<std::string> warnings;
};

// Checks the workspace feasibility conditions and the controller parameter
// ranges. Failures are listed, never thrown.
FeasibilityReport validate(const World& world, double gamma, double gamma_a, double gamma_s,
                           double epsilon);

// Closest obstacle to x over the union (workspace boundary included when
// bounded). Ties resolve to the lowest index.
NearestHit nearest_obstacle(const World& world, const Vec3& x);

// True iff x lies in the y-eroded obstacle-free workspace: inside the
// workspace and at distance >= y from every obstacle.
bool free_space_contains(const World& world, double y, const Vec3& x);

// Support function of a shape: max over the shape of dot(point, direction).
double support(const ConvexShape& shape, const Vec3& direction);

}  // namespace nav3d
