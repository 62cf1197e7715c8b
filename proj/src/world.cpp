#include "nav3d/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace nav3d {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Distance from a point inside the box to the box complement: smallest
// margin to a wall. Zero when the point is on or beyond a wall.
double wall_margin(const HalfspaceBox& box, const Vec3& x) {
    const double m = std::min({x.x - box.lo.x, box.hi.x - x.x, x.y - box.lo.y, box.hi.y - x.y,
                               x.z - box.lo.z, box.hi.z - x.z});
    return std::max(0.0, m);
}

Vec3 wall_projection(const HalfspaceBox& box, const Vec3& x) {
    if (!box.contains(x)) return x;  // already in the complement
    Vec3 p = x;
    const double margins[6] = {x.x - box.lo.x, box.hi.x - x.x, x.y - box.lo.y,
                               box.hi.y - x.y,  x.z - box.lo.z, box.hi.z - x.z};
    int best = 0;
    for (int k = 1; k < 6; ++k)
        if (margins[k] < margins[best]) best = k;
    switch (best) {
        case 0: p.x = box.lo.x; break;
        case 1: p.x = box.hi.x; break;
        case 2: p.y = box.lo.y; break;
        case 3: p.y = box.hi.y; break;
        case 4: p.z = box.lo.z; break;
        default: p.z = box.hi.z; break;
    }
    return p;
}

// Distance between an obstacle and the workspace complement: smallest slack
// between the obstacle's support and a wall, over the six inward directions.
double wall_pair_distance(const HalfspaceBox& box, const ConvexShape& shape) {
    const double slack =
        std::min({-support(shape, {-1, 0, 0}) - box.lo.x, box.hi.x - support(shape, {1, 0, 0}),
                  -support(shape, {0, -1, 0}) - box.lo.y, box.hi.y - support(shape, {0, 1, 0}),
                  -support(shape, {0, 0, -1}) - box.lo.z, box.hi.z - support(shape, {0, 0, 1})});
    return std::max(0.0, slack);
}

}  // namespace

double support(const ConvexShape& shape, const Vec3& direction) {
    if (const auto* s = std::get_if<Sphere>(&shape))
        return dot(s->center, direction) + s->radius * norm(direction);
    if (const auto* b = std::get_if<HalfspaceBox>(&shape)) {
        const Vec3 corner{direction.x > 0 ? b->hi.x : b->lo.x, direction.y > 0 ? b->hi.y : b->lo.y,
                          direction.z > 0 ? b->hi.z : b->lo.z};
        return dot(corner, direction);
    }
    return std::get<ConvexPolytope>(shape).mesh().support(direction);
}

double World::obstacle_distance(int index, const Vec3& x) const {
    if (index == 0) return wall_margin(*workspace, x);
    return distance(x, obstacles[index - 1]);
}

Vec3 World::obstacle_projection(int index, const Vec3& x) const {
    if (index == 0) return wall_projection(*workspace, x);
    return project(x, obstacles[index - 1]);
}

NearestHit nearest_obstacle(const World& world, const Vec3& x) {
    NearestHit hit;
    hit.distance = kInf;
    const int first = world.bounded() ? 0 : 1;
    for (int i = first; i <= world.obstacle_count(); ++i) {
        const double d = world.obstacle_distance(i, x);
        if (d < hit.distance) {
            hit.distance = d;
            hit.obstacle_index = i;
        }
    }
    if (hit.obstacle_index >= 0) {
        hit.projection = world.obstacle_projection(hit.obstacle_index, x);
        hit.x_pi = x - hit.projection;
    } else {
        hit.projection = x;  // no obstacles at all
        hit.x_pi = Vec3{};
    }
    return hit;
}

bool free_space_contains(const World& world, double y, const Vec3& x) {
    if (world.bounded() && !world.workspace->contains(x)) return false;
    const int first = world.bounded() ? 0 : 1;
    for (int i = first; i <= world.obstacle_count(); ++i)
        if (world.obstacle_distance(i, x) < y) return false;
    return true;
}

FeasibilityReport validate(const World& world, double gamma, double gamma_a, double gamma_s,
                           double epsilon) {
    FeasibilityReport report;
    auto fail = [&](const std::string& msg) { report.violations.push_back(msg); };

    if (world.robot_radius < 0.0) fail("robot radius must be non-negative");
    if (!(world.safety_margin > 0.0)) fail("safety margin r_s must be positive");

    const int b = world.obstacle_count();
    double min_sep = kInf;
    for (int i = 1; i <= b; ++i)
        for (int j = i + 1; j <= b; ++j)
            min_sep = std::min(min_sep, pair_distance(world.obstacles[i - 1], world.obstacles[j - 1]));
    if (world.bounded())
        for (int i = 1; i <= b; ++i)
            min_sep = std::min(min_sep, wall_pair_distance(*world.workspace, world.obstacles[i - 1]));
    report.min_pair_separation = min_sep;

    double d_origin = kInf;
    const int first = world.bounded() ? 0 : 1;
    for (int i = first; i <= b; ++i)
        d_origin = std::min(d_origin, world.obstacle_distance(i, Vec3{}));
    report.d0 = d_origin - world.robot_radius;
    report.r_bar_s = std::min(min_sep / 2.0 - world.robot_radius, report.d0);

    std::ostringstream msg;
    if (!(min_sep > 2.0 * world.robot_radius)) {
        msg << "Assumption 1 violated: minimum obstacle separation " << min_sep
            << " must exceed 2r = " << 2.0 * world.robot_radius;
        fail(msg.str());
    }
    if (!(report.d0 > 0.0)) fail("target is not strictly inside the free workspace (d(0, O_W) <= r)");
    if (!(world.safety_margin < report.r_bar_s)) fail("safety margin r_s must be below r_bar_s");
    if (!(gamma_a > 0.0 && gamma_a < gamma_s && gamma_s < gamma))
        fail("band parameters must satisfy 0 < gamma_a < gamma_s < gamma");
    if (!(gamma < report.r_bar_s - world.safety_margin))
        fail("gamma must be below r_bar_s - r_s");
    if (!(epsilon > 0.0)) fail("epsilon must be positive");

    if (gamma <= world.safety_margin)
        report.warnings.push_back("gamma <= r_s: tighter than the recommended range (r_s, r_bar_s - r_s)");

    report.ok = report.violations.empty();
    return report;
}

}  // namespace nav3d
