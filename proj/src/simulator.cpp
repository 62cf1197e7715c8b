#include "nav3d/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <sstream>

#include "nav3d/errors.hpp"

namespace nav3d {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec3 velocity(const HybridState& xi, const Vec3& x, const World& world,
              const ControllerParams& params) {
    HybridState probe = xi;
    probe.x = x;
    return control(probe, world, params);
}

// Earliest state (within `tol` along the path) on (0, dt] for which
// `in_jump` holds, assuming it holds at dt. Probes are single RK4 steps from
// xi, the same rule committed steps use.
HybridState refine_entry(const HybridState& xi, double dt, const World& world,
                         const ControllerParams& params,
                         const std::function<bool(const HybridState&)>& in_jump, double tol) {
    const double speed = norm(control(xi, world, params)) + 1e-12;
    double lo = 0.0, hi = dt;
    HybridState at_hi = flow_step(xi, world, params, dt);
    for (int iter = 0; iter < 80 && (hi - lo) * speed > tol; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const HybridState at_mid = flow_step(xi, world, params, mid);
        if (in_jump(at_mid)) {
            hi = mid;
            at_hi = at_mid;
        } else {
            lo = mid;
        }
    }
    return at_hi;
}

// Membership tests on the sensed pipeline: scans replace exact geometry in
// the decision path, while the flow field itself keeps the exact projection.
struct SensedTests {
    const Scanner& scanner;
    const World& world;
    const ControllerParams& params;

    BoundaryCloud do_scan(const Vec3& x) const {
        // No boundary point can lie within the sensing radius when the
        // obstacle union itself is farther away; skip the ray casting then.
        if (nearest_obstacle(world, x).distance > scanner.config().sensing_radius) {
            BoundaryCloud empty;
            empty.robot_center = x;
            return empty;
        }
        return scanner.scan(x, world);
    }

    bool in_jump_set(const HybridState& xi) const {
        if (xi.m == Mode::Avoidance && !xi.has_jumped()) return true;
        const BoundaryCloud cloud = do_scan(xi.x);
        const double d = sensed_gap(cloud);
        if (xi.m == Mode::MoveToTarget) {
            if (d > params.r_a + params.gamma_s) return false;
            const BoundaryCloud subset = closest_obstacle_boundary(cloud);
            return sensed_landing_test(subset, xi.x, params.r_a);
        }
        if (d > params.r_a + params.gamma) return true;  // left the avoidance band
        const BoundaryCloud subset = closest_obstacle_boundary(cloud);
        if (world.bounded() && subset.index(0) == 0)
            return true;  // closest obstacle is the workspace boundary
        if (sensed_landing_test(subset, xi.x, params.r_a)) return false;
        return norm(xi.h) - norm(xi.x) >= params.epsilon;
    }

    // Avoidance plane normal from the sensed nearest boundary point.
    Vec3 pick_axis(const Vec3& x) const {
        const BoundaryCloud cloud = do_scan(x);
        if (cloud.empty()) return choose_axis_from(x, Vec3{});
        double best = kInf;
        std::size_t best_k = 0;
        for (std::size_t k = 0; k < cloud.size(); ++k) {
            const double dk = distance(x, cloud.point(k));
            if (dk < best) {
                best = dk;
                best_k = k;
            }
        }
        return choose_axis_from(x, x - cloud.point(best_k));
    }
};

// Samples the band around the obstacle engaged at a hit point, looking for
// an exit-region point at least epsilon closer to the target than the hit
// point. Warns when none is found: with such an epsilon the avoidance mode
// could circulate without ever handing control back.
void check_epsilon_progress(const World& world, const ControllerParams& params,
                            const HybridState& hit_state, int obstacle_index,
                            std::mt19937_64& rng, std::vector<std::string>& warnings) {
    if (obstacle_index < 1) return;
    const Sphere bound = bounding_sphere(world.obstacle(obstacle_index));
    const double reach = bound.radius + params.r_a + params.gamma;
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    const int wanted = 10000;
    int accepted = 0;
    const double hit_norm = norm(hit_state.h);
    for (long attempt = 0; attempt < 2000000 && accepted < wanted; ++attempt) {
        const Vec3 y = bound.center + reach * Vec3{unit(rng), unit(rng), unit(rng)};
        const double d = world.obstacle_distance(obstacle_index, y);
        if (d < params.r_a || d > params.r_a + params.gamma) continue;
        ++accepted;
        if (hit_norm - norm(y) < params.epsilon) continue;
        if (in_exit_region(y, world, params)) return;  // progress point exists
    }
    std::ostringstream msg;
    msg << "epsilon-progress check: sampled " << accepted << " band points around obstacle "
        << obstacle_index << " and found no exit point at least epsilon closer than the hit point";
    warnings.push_back(msg.str());
}

struct Recorder {
    HybridTrajectory& traj;
    const World& world;
    const ControllerParams& params;
    int stride;
    long step_count = 0;

    TrajectorySample make_sample(double t, int j, const HybridState& xi) const {
        TrajectorySample s;
        s.t = t;
        s.j = j;
        s.xi = xi;
        const NearestHit hit = nearest_obstacle(world, xi.x);
        s.gap = hit.distance - params.r_a;
        s.nearest_index = hit.obstacle_index;
        s.u = control(xi, world, params);
        return s;
    }

    void force(double t, int j, const HybridState& xi) {
        traj.samples.push_back(make_sample(t, j, xi));
    }

    // Strided recording for plain flow steps.
    void step(double t, int j, const HybridState& xi) {
        ++step_count;
        if (stride <= 1 || step_count % stride == 0) force(t, j, xi);
    }
};

}  // namespace

HybridState flow_step(const HybridState& xi, const World& world, const ControllerParams& params,
                      double dt) {
    const Vec3 k1 = velocity(xi, xi.x, world, params);
    const Vec3 k2 = velocity(xi, xi.x + (0.5 * dt) * k1, world, params);
    const Vec3 k3 = velocity(xi, xi.x + (0.5 * dt) * k2, world, params);
    const Vec3 k4 = velocity(xi, xi.x + dt * k3, world, params);
    HybridState next = xi;
    next.x = xi.x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    next.s = xi.s + dt;
    return next;
}

std::optional<HybridState> detect_jump(const HybridState& xi_prev, const HybridState& xi_next,
                                        const World& world, const ControllerParams& params,
                                        double event_tolerance) {
    if (!in_jump_set(xi_next, world, params)) return std::nullopt;
    const double dt = xi_next.s - xi_prev.s;
    if (dt <= 0.0) return xi_next;
    auto pred = [&](const HybridState& s) { return in_jump_set(s, world, params); };
    return refine_entry(xi_prev, dt, world, params, pred, event_tolerance);
}

HybridTrajectory run(const World& world, const ControllerParams& params, const SimConfig& sim,
                     const HybridState& xi0) {
    HybridState xi = xi0;
    xi.s0 = xi0.s;
    if (std::abs(norm(xi.a) - 1.0) > 1e-6)
        throw ScenarioError("initial avoidance plane normal must be a unit vector");
    xi.a = xi.a / norm(xi.a);
    if (!free_space_contains(world, params.r_a, xi.x))
        throw ScenarioError("initial position is not in the free workspace");
    if (!free_space_contains(world, params.r_a, xi.h))
        throw ScenarioError("initial hit point is not in the free workspace");
    if (xi.s < 0.0) throw ScenarioError("timer state must be non-negative");

    HybridTrajectory traj;
    std::mt19937_64 rng(sim.seed);
    Recorder rec{traj, world, params, sim.record_stride};

    std::optional<Scanner> scanner;
    std::optional<SensedTests> sensed;
    if (sim.pipeline == Pipeline::Sensed) {
        scanner.emplace(sim.sensor);
        sensed.emplace(SensedTests{*scanner, world, params});
    }
    auto jump_due = [&](const HybridState& s) {
        return sensed ? sensed->in_jump_set(s) : in_jump_set(s, world, params);
    };

    double t = 0.0;
    int j = 0;

    try {
        rec.force(t, j, xi);

        while (true) {
            // Jumps take priority over flow; several may fire at one instant
            // (an initial avoidance state immediately hands control back and
            // may land again right away).
            int jumps_here = 0;
            while (jump_due(xi)) {
                JumpRecord jr;
                jr.t = t;
                jr.j = j;
                jr.pre = xi;
                if (xi.m == Mode::MoveToTarget) {
                    jr.kind = JumpKind::L0;
                    const Vec3 axis =
                        sensed ? sensed->pick_axis(xi.x) : choose_axis(xi.x, world);
                    xi = apply_l0(xi, axis);
                    check_epsilon_progress(world, params, xi,
                                           nearest_obstacle(world, xi.x).obstacle_index, rng,
                                           traj.warnings);
                } else {
                    jr.kind = JumpKind::L1;
                    xi = apply_l1(xi);
                }
                jr.post = xi;
                traj.jumps.push_back(jr);
                ++j;
                rec.force(t, j, xi);
                if (++jumps_here > 4) {
                    traj.outcome = {Outcome::Kind::Fault, t, "jump loop at a single instant"};
                    return traj;
                }
            }

            if (norm(xi.x) <= sim.convergence_radius) {
                traj.outcome = {Outcome::Kind::Converged, t, ""};
                return traj;
            }
            if (t >= sim.t_max) {
                traj.outcome = {Outcome::Kind::MaxTimeExceeded, t, "t_max reached"};
                return traj;
            }

            const double dt = std::min(sim.dt_max, sim.t_max - t);
            const HybridState trial = flow_step(xi, world, params, dt);
            HybridState accepted = trial;
            if (jump_due(trial)) {
                accepted = refine_entry(xi, dt, world, params, jump_due, sim.event_tolerance);
            }
            t += accepted.s - xi.s;
            xi = accepted;

            if (!finite(xi.x)) {
                traj.outcome = {Outcome::Kind::Fault, t, "state diverged to non-finite values"};
                return traj;
            }

            const double gap = nearest_obstacle(world, xi.x).distance - params.r_a;
            if (gap < 0.0) {
                rec.force(t, j, xi);
                std::ostringstream msg;
                msg << "safety violation: gap " << gap << " at t = " << t;
                traj.outcome = {Outcome::Kind::Fault, t, msg.str()};
                return traj;
            }

            if (jump_due(xi)) {
                rec.force(t, j, xi);  // pre-jump state is always recorded
            } else {
                rec.step(t, j, xi);
            }
        }
    } catch (const NavError& err) {
        rec.force(t, j, xi);
        traj.outcome = {Outcome::Kind::Fault, t, err.what()};
        return traj;
    }
}

AuditReport audit(const HybridTrajectory& traj, const World& world,
                  const ControllerParams& params, const AuditOptions& options) {
    (void)world;
    AuditReport report;
    report.warnings = traj.warnings;
    report.jump_count = static_cast<int>(traj.jumps.size());
    if (traj.samples.empty()) return report;

    const TrajectorySample& last = traj.samples.back();
    report.t_final = last.t;
    report.converged = norm(last.xi.x) <= options.convergence_radius;

    report.min_gap = kInf;
    report.max_plane_residual = 0.0;
    report.min_avoidance_gap = kInf;
    report.max_avoidance_gap = -kInf;
    for (const TrajectorySample& s : traj.samples) {
        report.min_gap = std::min(report.min_gap, s.gap);
        if (s.xi.m == Mode::Avoidance && s.xi.has_jumped()) {
            report.max_plane_residual =
                std::max(report.max_plane_residual, std::abs(dot(s.xi.a, s.xi.x - s.xi.h)));
            report.min_avoidance_gap = std::min(report.min_avoidance_gap, s.gap);
            report.max_avoidance_gap = std::max(report.max_avoidance_gap, s.gap);
        }
    }
    report.safety_ok = report.min_gap >= -options.event_tolerance;
    report.plane_ok = report.max_plane_residual <= options.plane_tolerance;
    report.band_ok = report.min_avoidance_gap >= -options.event_tolerance &&
                     (report.max_avoidance_gap == -kInf ||
                      report.max_avoidance_gap <= params.gamma + options.event_tolerance);
    if (report.min_avoidance_gap == kInf) report.band_ok = true;  // no avoidance phase

    // Jump kinds must alternate, allowing one leading L1 from an initial
    // avoidance state.
    report.alternation_ok = true;
    std::size_t k0 = 0;
    if (!traj.jumps.empty() && traj.jumps[0].kind == JumpKind::L1) k0 = 1;
    for (std::size_t k = k0; k < traj.jumps.size(); ++k) {
        const JumpKind expected = ((k - k0) % 2 == 0) ? JumpKind::L0 : JumpKind::L1;
        if (traj.jumps[k].kind != expected) report.alternation_ok = false;
    }

    for (const JumpRecord& jr : traj.jumps)
        if (jr.kind == JumpKind::L0) report.hit_norms.push_back(norm(jr.post.h));

    report.min_hit_decrement = kInf;
    for (std::size_t k = 0; k + 1 < report.hit_norms.size(); ++k)
        report.min_hit_decrement =
            std::min(report.min_hit_decrement, report.hit_norms[k] - report.hit_norms[k + 1]);
    report.progress_ok =
        report.min_hit_decrement == kInf ||
        report.min_hit_decrement >= params.epsilon - options.progress_tolerance;

    // |x| must not grow while flowing in move-to-target mode.
    report.m0_monotone_ok = true;
    for (std::size_t k = 0; k + 1 < traj.samples.size(); ++k) {
        const TrajectorySample& a = traj.samples[k];
        const TrajectorySample& b = traj.samples[k + 1];
        if (a.j != b.j) continue;  // jump between the samples
        if (a.xi.m != Mode::MoveToTarget) continue;
        if (norm(b.xi.x) > norm(a.xi.x) + options.monotone_tolerance * (1.0 + norm(a.xi.x)))
            report.m0_monotone_ok = false;
    }
    return report;
}

}  // namespace nav3d
