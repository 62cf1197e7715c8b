#include "nav3d/controller.hpp"

#include <algorithm>
#include <cmath>

#include "nav3d/errors.hpp"

namespace nav3d {

namespace {

// Distance from the segment to the workspace complement. The margin to the
// walls is concave along the segment, so the minimum sits at an endpoint.
double segment_wall_distance(const World& world, const Segment& seg) {
    return std::min(world.obstacle_distance(0, seg.p), world.obstacle_distance(0, seg.q));
}

bool segment_blocked_by(const World& world, int index, const Segment& seg, double r_a) {
    if (index == 0) return segment_wall_distance(world, seg) < r_a;
    const ConvexShape& shape = world.obstacle(index);
    // Bounding-sphere prune before the 1D minimization.
    const Sphere bound = bounding_sphere(shape);
    const double coarse = distance(bound.center, closest_point_on_segment(bound.center, seg));
    if (coarse - bound.radius >= r_a) return false;
    return segment_distance(seg, shape) < r_a;
}

bool near_workspace_boundary(const HybridState& xi, const World& world,
                             const ControllerParams& params) {
    if (!world.bounded()) return false;
    return world.obstacle_distance(0, xi.x) <= params.r_a + params.gamma;
}

bool exit_and_closer(const HybridState& xi, const World& world, const ControllerParams& params) {
    return norm(xi.h) - norm(xi.x) >= params.epsilon && in_exit_region(xi.x, world, params);
}

}  // namespace

double eta(double d_surface, const ControllerParams& params) {
    const double g = d_surface - params.r_a;
    if (g >= params.gamma_s) return -1.0;
    if (g <= params.gamma_a) return 1.0;
    return 1.0 - (g - params.gamma_a) / (0.5 * (params.gamma_s - params.gamma_a));
}

Vec3 avoidance_field(const Vec3& x, const Vec3& a, const World& world,
                     const ControllerParams& params) {
    const NearestHit hit = nearest_obstacle(world, x);
    if (norm(hit.x_pi) < 1e-9) throw DegenerateProjection{};
    const double e = eta(hit.distance, params);
    const Vec3 w = tangent_projector(a) * hit.x_pi;
    return e * w + (1.0 - std::abs(e)) * (rotation_about(a) * w);
}

Vec3 control(const HybridState& xi, const World& world, const ControllerParams& params) {
    if (xi.m == Mode::MoveToTarget) return -params.kappa_s * xi.x;
    return params.kappa_r * avoidance_field(xi.x, xi.a, world, params);
}

bool in_landing_region(const Vec3& x, const World& world, const ControllerParams& params) {
    const Segment to_target{x, Vec3{}};
    const int first = world.bounded() ? 0 : 1;
    for (int i = first; i <= world.obstacle_count(); ++i) {
        const double d = world.obstacle_distance(i, x);
        if (d < params.r_a || d > params.r_a + params.gamma) continue;
        if (segment_blocked_by(world, i, to_target, params.r_a)) return true;
    }
    return false;
}

bool in_exit_region(const Vec3& x, const World& world, const ControllerParams& params) {
    const double d = nearest_obstacle(world, x).distance;
    if (d < params.r_a || d > params.r_a + params.gamma) return false;
    return !in_landing_region(x, world, params);
}

bool in_jump_set_0(const Vec3& x, const World& world, const ControllerParams& params) {
    const double gap = nearest_obstacle(world, x).distance - params.r_a;
    return gap <= params.gamma_s && in_landing_region(x, world, params);
}

bool in_flow_set_0(const Vec3& x, const World& world, const ControllerParams& params) {
    const double gap = nearest_obstacle(world, x).distance - params.r_a;
    return gap >= params.gamma_s || in_exit_region(x, world, params);
}

bool in_jump_set_1(const HybridState& xi, const World& world, const ControllerParams& params) {
    if (xi.m != Mode::Avoidance) return false;
    if (!xi.has_jumped()) return true;  // immediate switch out of an initial avoidance mode
    const double gap = nearest_obstacle(world, xi.x).distance - params.r_a;
    if (gap >= params.gamma) return true;
    if (near_workspace_boundary(xi, world, params)) return true;
    return exit_and_closer(xi, world, params);
}

bool in_flow_set_1(const HybridState& xi, const World& world, const ControllerParams& params) {
    if (xi.m != Mode::Avoidance || !xi.has_jumped()) return false;
    const double gap = nearest_obstacle(world, xi.x).distance - params.r_a;
    if (gap > params.gamma) return false;
    if (near_workspace_boundary(xi, world, params)) return false;
    return !exit_and_closer(xi, world, params);
}

bool in_jump_set(const HybridState& xi, const World& world, const ControllerParams& params) {
    if (xi.m == Mode::MoveToTarget) return in_jump_set_0(xi.x, world, params);
    return in_jump_set_1(xi, world, params);
}

bool in_flow_set(const HybridState& xi, const World& world, const ControllerParams& params) {
    if (xi.m == Mode::MoveToTarget) return in_flow_set_0(xi.x, world, params);
    return in_flow_set_1(xi, world, params);
}

Vec3 choose_axis_from(const Vec3& x, const Vec3& x_pi) {
    if (norm(x) < 1e-9) throw ZeroState{};
    const Vec3 c = cross(x, x_pi);
    const double n = norm(c);
    if (n >= 1e-9) return c / n;
    // x and x_pi are collinear: take the first canonical direction with a
    // usable component orthogonal to x.
    const Vec3 xhat = x / norm(x);
    for (const Vec3& e : {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}) {
        const Vec3 w = e - dot(e, xhat) * xhat;
        const double wn = norm(w);
        if (wn >= 1e-6) return w / wn;
    }
    throw ZeroState{};  // unreachable: some basis vector always qualifies
}

Vec3 choose_axis(const Vec3& x, const World& world) {
    return choose_axis_from(x, nearest_obstacle(world, x).x_pi);
}

HybridState apply_l0(const HybridState& xi, const Vec3& axis) {
    HybridState next = xi;
    next.h = xi.x;
    next.a = axis;
    next.m = Mode::Avoidance;
    next.s = xi.s + 1.0;
    return next;
}

HybridState apply_l1(const HybridState& xi) {
    HybridState next = xi;
    next.m = Mode::MoveToTarget;
    next.s = xi.s + 1.0;
    return next;
}

HybridState jump_update(const HybridState& xi, const World& world,
                        const ControllerParams& params) {
    (void)params;
    if (xi.m == Mode::MoveToTarget) return apply_l0(xi, choose_axis(xi.x, world));
    return apply_l1(xi);
}

}  // namespace nav3d
