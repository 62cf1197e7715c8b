#include <doctest.h>

#include <cmath>

#include "nav3d/runner.hpp"
#include "nav3d/scenario.hpp"
#include "nav3d/simulator.hpp"
#include "oracles.hpp"

using namespace nav3d;
namespace orc = nav3d::oracles;

namespace {

const std::string kScenarioDir = NAV3D_SCENARIO_DIR;

World empty_world() {
    World w;
    w.robot_radius = 0.1;
    w.safety_margin = 0.05;
    return w;
}

ControllerParams basic_params() {
    ControllerParams p;
    p.kappa_s = 1.0;
    p.kappa_r = 0.5;
    p.gamma = 0.4;
    p.gamma_a = 0.4 / 3;
    p.gamma_s = 0.8 / 3;
    p.epsilon = 0.1;
    p.r_a = 0.15;
    return p;
}

}  // namespace

TEST_CASE("flow_step integrates the move-to-target decay") {
    const World w = empty_world();
    const ControllerParams p = basic_params();

    HybridState xi;
    xi.x = {1, 0, 0};
    xi.h = {1, 0, 0};
    xi.m = Mode::MoveToTarget;

    // derivative limit at dt -> 0
    const double dt_small = 1e-8;
    const HybridState tiny = flow_step(xi, w, p, dt_small);
    CHECK(norm((tiny.x - xi.x) / dt_small - Vec3{-1, 0, 0}) <= 1e-6);

    // one RK4 step vs the closed-form exponential
    const double dt = 0.01;
    const HybridState next = flow_step(xi, w, p, dt);
    CHECK(std::abs(next.x.x - std::exp(-dt)) <= 1e-10);
    CHECK(next.x.y == 0.0);

    // only x and s evolve
    CHECK(norm(next.h - xi.h) == 0.0);
    CHECK(norm(next.a - xi.a) == 0.0);
    CHECK(next.m == xi.m);
    CHECK(next.s == doctest::Approx(xi.s + dt));
}

TEST_CASE("detect_jump refines a radial landing to the band boundary") {
    World w = empty_world();
    w.obstacles.push_back(Sphere{{1.5, 0, 0}, 0.3});
    ControllerParams p = basic_params();
    p.gamma = 0.3;
    p.gamma_a = 0.1;
    p.gamma_s = 0.2;

    // radial approach along the x axis; analytic crossing of the jump set
    // boundary at |x| = 1.5 + 0.3 + r_a + gamma_s
    HybridState xi;
    xi.x = {3, 0, 0};
    xi.h = xi.x;
    xi.m = Mode::MoveToTarget;
    const double cross_x = 1.8 + p.r_a + p.gamma_s;
    const double t_cross = std::log(3.0 / cross_x);

    double t = 0.0;
    const double dt = 1e-3;
    HybridState cur = xi;
    std::optional<HybridState> refined;
    for (int i = 0; i < 100000; ++i) {
        const HybridState next = flow_step(cur, w, p, dt);
        refined = detect_jump(cur, next, w, p, 1e-6);
        if (refined) {
            t += refined->s - cur.s;
            break;
        }
        cur = next;
        t += dt;
    }
    REQUIRE(refined.has_value());
    const double gap = nearest_obstacle(w, refined->x).distance - p.r_a;
    CHECK(std::abs(gap - p.gamma_s) <= 1e-6);
    CHECK(std::abs(t - t_cross) <= 1e-5);

    // no membership change -> no event
    HybridState far = xi;
    far.x = {5, 0, 0};
    const HybridState far_next = flow_step(far, w, p, dt);
    CHECK_FALSE(detect_jump(far, far_next, w, p).has_value());
}

TEST_CASE("obstacle-free run decays exponentially with zero jumps") {
    const World w = empty_world();
    const ControllerParams p = basic_params();
    SimConfig sim;
    sim.t_max = 30.0;

    HybridState xi;
    xi.x = {1, 1, 1};
    xi.h = xi.x;

    const HybridTrajectory traj = run(w, p, sim, xi);
    CHECK(traj.outcome.kind == Outcome::Kind::Converged);
    CHECK(traj.jumps.empty());
    for (const TrajectorySample& s : traj.samples) {
        const double expected = norm(Vec3{1, 1, 1}) * std::exp(-s.t);
        CHECK(std::abs(norm(s.xi.x) - expected) <= 1e-8);
    }

    const AuditReport report = audit(traj, w, p);
    CHECK(report.passed());
    CHECK(report.jump_count == 0);
    CHECK(report.m0_monotone_ok);
}

TEST_CASE("study-1 run: one landing, one release, safe throughout") {
    const Scenario sc = Scenario::load(kScenarioDir + "/study1.json");
    REQUIRE(sc.validate().ok);

    const HybridTrajectory traj = run(sc.world, sc.params, sc.sim, sc.initial_states[0]);
    CHECK(traj.outcome.kind == Outcome::Kind::Converged);
    REQUIRE(traj.jumps.size() == 2);
    CHECK(traj.jumps[0].kind == JumpKind::L0);
    CHECK(traj.jumps[1].kind == JumpKind::L1);

    const AuditReport report = audit(traj, sc.world, sc.params, audit_options_for(sc));
    CHECK(report.passed());
    CHECK(report.min_gap >= 0.0);
    CHECK(report.max_plane_residual <= 1e-6);
    CHECK(report.hit_norms.size() == 1);

    // the hit point lands inside the landing band at depth gamma_s
    const HybridState& hit = traj.jumps[0].post;
    const double hit_gap = nearest_obstacle(sc.world, hit.h).distance - sc.params.r_a;
    CHECK(hit_gap <= sc.params.gamma_s + 1e-6);
    CHECK(std::abs(dot(hit.a, hit.h)) <= 1e-6);
}

TEST_CASE("initial avoidance mode hands control back before flowing") {
    const Scenario sc = Scenario::load(kScenarioDir + "/study1.json");
    HybridState xi = sc.initial_states[0];
    xi.m = Mode::Avoidance;
    xi.s = 4.2;  // arbitrary timer start

    const HybridTrajectory traj = run(sc.world, sc.params, sc.sim, xi);
    REQUIRE_FALSE(traj.jumps.empty());
    CHECK(traj.jumps[0].kind == JumpKind::L1);
    CHECK(traj.jumps[0].t == 0.0);
    CHECK(traj.jumps[0].j == 0);
    CHECK(traj.jumps[0].post.s == doctest::Approx(5.2));
    // no flow happened before the jump
    CHECK(norm(traj.jumps[0].pre.x - xi.x) == 0.0);
    CHECK(traj.outcome.kind == Outcome::Kind::Converged);

    const AuditReport report = audit(traj, sc.world, sc.params, audit_options_for(sc));
    CHECK(report.alternation_ok);
}

TEST_CASE("sensed pipeline matches the exact pipeline on study 1") {
    Scenario sc = Scenario::load(kScenarioDir + "/study1.json");
    const HybridTrajectory exact = run(sc.world, sc.params, sc.sim, sc.initial_states[0]);
    sc.sim.pipeline = Pipeline::Sensed;
    const HybridTrajectory sensed = run(sc.world, sc.params, sc.sim, sc.initial_states[0]);

    CHECK(sensed.outcome.kind == Outcome::Kind::Converged);
    REQUIRE(sensed.jumps.size() == exact.jumps.size());
    for (std::size_t k = 0; k < exact.jumps.size(); ++k) {
        CHECK(sensed.jumps[k].kind == exact.jumps[k].kind);
        CHECK(std::abs(sensed.jumps[k].t - exact.jumps[k].t) <= 5.0 * sc.sim.dt_max);
    }

    const AuditReport report = audit(sensed, sc.world, sc.params, audit_options_for(sc));
    CHECK(report.passed());
}

TEST_CASE("bounded workspace run stays clear of the walls") {
    const Scenario sc = Scenario::load(kScenarioDir + "/boxworld.json");
    REQUIRE(sc.validate().ok);
    for (const HybridState& xi0 : sc.initial_states) {
        const HybridTrajectory traj = run(sc.world, sc.params, sc.sim, xi0);
        CHECK(traj.outcome.kind == Outcome::Kind::Converged);
        const AuditReport report = audit(traj, sc.world, sc.params, audit_options_for(sc));
        CHECK(report.passed());
    }
}

TEST_CASE("audit flags a manufactured safety violation") {
    const World w = empty_world();
    const ControllerParams p = basic_params();
    HybridTrajectory traj;
    TrajectorySample s;
    s.xi.x = {0.5, 0, 0};
    s.gap = -0.01;
    traj.samples.push_back(s);
    s.t = 1.0;
    s.xi.x = {0, 0, 0};
    s.gap = 0.3;
    traj.samples.push_back(s);
    const AuditReport report = audit(traj, w, p);
    CHECK_FALSE(report.safety_ok);
    CHECK_FALSE(report.passed());
}

TEST_CASE("audit flags non-monotone move-to-target stretches") {
    const World w = empty_world();
    const ControllerParams p = basic_params();
    HybridTrajectory traj;
    for (int i = 0; i < 3; ++i) {
        TrajectorySample s;
        s.t = i * 0.1;
        s.xi.x = {1.0 + 0.1 * i, 0, 0};  // drifting away from the target
        s.gap = 1.0;
        traj.samples.push_back(s);
    }
    const AuditReport report = audit(traj, w, p);
    CHECK_FALSE(report.m0_monotone_ok);
}

TEST_CASE("epsilon-progress sampling warns when epsilon is too large") {
    // An epsilon bigger than any reachable progress around the obstacle
    // cannot be satisfied; the run must report it.
    Scenario sc = Scenario::load(kScenarioDir + "/study1.json");
    ControllerParams p = sc.params;
    p.epsilon = 5.0;  // larger than the whole approach distance
    SimConfig sim = sc.sim;
    sim.t_max = 2.0;  // the run cannot leave the avoidance mode; cap it

    const HybridTrajectory traj = run(sc.world, p, sim, sc.initial_states[0]);
    bool warned = false;
    for (const std::string& wmsg : traj.warnings)
        if (wmsg.find("epsilon") != std::string::npos) warned = true;
    CHECK(warned);
}
