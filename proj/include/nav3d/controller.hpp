#pragma once

#include "nav3d/world.hpp"

namespace nav3d {

enum class Mode : int {
    MoveToTarget = 0,
    Avoidance = 1,
};

enum class JumpKind {
    L0,  // move-to-target -> obstacle-avoidance
    L1,  // obstacle-avoidance -> move-to-target
};

struct ControllerParams {
    double kappa_s = 1.0;  // move-to-target gain, 1/s
    double kappa_r = 1.0;  // avoidance gain, 1/s
    double gamma = 0.0;    // width of the band the robot circulates in
    double gamma_a = 0.0;  // inner threshold of the radial blend
    double gamma_s = 0.0;  // outer threshold of the radial blend / landing depth
    double epsilon = 0.0;  // required progress between consecutive hit points
    double r_a = 0.0;      // robot radius + safety margin
};

// Full controller state: robot center x, hit point h, avoidance plane normal
// a, mode m and the timer s (s0 is its initial value, constant over a run).
struct HybridState {
    Vec3 x;
    Vec3 h;
    Vec3 a{0.0, 0.0, 1.0};
    Mode m = Mode::MoveToTarget;
    double s = 0.0;
    double s0 = 0.0;

    bool has_jumped() const { return s != s0; }
};

// Radial blend in [-1, 1] as a function of the distance d_surface from the
// robot center to the obstacle union: +1 (outward push) below the inner
// threshold, -1 (inward pull) beyond the outer one, affine in between.
double eta(double d_surface, const ControllerParams& params);

// Velocity direction used in the avoidance mode. Lies in the plane
// orthogonal to a; blends the radial component of x_pi with its quarter-turn
// rotation about a. Throws DegenerateProjection when x sits on the obstacle.
Vec3 avoidance_field(const Vec3& x, const Vec3& a, const World& world,
                     const ControllerParams& params);

// Mode-dependent velocity command.
Vec3 control(const HybridState& xi, const World& world, const ControllerParams& params);

// True iff x is inside the band of some obstacle whose inflated body blocks
// the straight segment from x to the target.
bool in_landing_region(const Vec3& x, const World& world, const ControllerParams& params);

// Band points that are not landing points: the straight run to the target
// is clear.
bool in_exit_region(const Vec3& x, const World& world, const ControllerParams& params);

bool in_jump_set_0(const Vec3& x, const World& world, const ControllerParams& params);
bool in_flow_set_0(const Vec3& x, const World& world, const ControllerParams& params);
bool in_jump_set_1(const HybridState& xi, const World& world, const ControllerParams& params);
bool in_flow_set_1(const HybridState& xi, const World& world, const ControllerParams& params);

// Membership in the jump/flow set of the state's own mode.
bool in_jump_set(const HybridState& xi, const World& world, const ControllerParams& params);
bool in_flow_set(const HybridState& xi, const World& world, const ControllerParams& params);

// Deterministic unit normal orthogonal to x: the cross product with the
// obstacle direction x_pi when well conditioned, otherwise the first
// canonical basis vector with a usable rejection from x.
Vec3 choose_axis_from(const Vec3& x, const Vec3& x_pi);
Vec3 choose_axis(const Vec3& x, const World& world);

// Jump maps. apply_l0 stores the hit point and a caller-chosen avoidance
// plane normal; apply_l1 only flips the mode. Both bump s by one and leave
// x unchanged.
HybridState apply_l0(const HybridState& xi, const Vec3& axis);
HybridState apply_l1(const HybridState& xi);

// Update law dispatched on the state's mode (exact-geometry axis choice).
HybridState jump_update(const HybridState& xi, const World& world,
                        const ControllerParams& params);

}  // namespace nav3d
