#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "nav3d/runner.hpp"
#include "nav3d/scenario.hpp"
#include "nav3d/svg.hpp"
#include "nav3d/trajectory_io.hpp"

using namespace nav3d;

namespace {

const std::string kScenarioDir = NAV3D_SCENARIO_DIR;

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("scenario loading applies defaults and validates structure") {
    const Scenario sc = Scenario::load(kScenarioDir + "/study1.json");
    CHECK(sc.world.obstacle_count() == 1);
    CHECK(sc.params.r_a == doctest::Approx(0.25));
    CHECK(sc.params.gamma_a == doctest::Approx(sc.params.gamma / 3.0));
    CHECK(sc.params.gamma_s == doctest::Approx(2.0 * sc.params.gamma / 3.0));
    CHECK(sc.initial_states.size() == 1);
    CHECK(norm(sc.initial_states[0].h - sc.initial_states[0].x) == 0.0);  // h defaults to x

    CHECK_THROWS_AS(Scenario::from_json_text("{"), ScenarioError);
    CHECK_THROWS_AS(Scenario::from_json_text("{}"), ScenarioError);
    CHECK_THROWS_WITH_AS(
        Scenario::from_json_text(R"({"workspace":{"type":"unbounded"},"obstacles":[],
            "robot":{"radius":0.1},"control":{},"initial_states":[]})"),
        doctest::Contains("robot.safety_margin"), ScenarioError);
    CHECK_THROWS_WITH_AS(
        Scenario::from_json_text(R"({"workspace":{"type":"cylinder"},"obstacles":[],
            "robot":{"radius":0.1,"safety_margin":0.05},
            "control":{"kappa_s":1,"kappa_r":1,"gamma":0.2,"epsilon":0.05},
            "initial_states":[{"x":[1,1,1]}]})"),
        doctest::Contains("workspace"), ScenarioError);
    CHECK_THROWS_WITH_AS(
        Scenario::from_json_text(R"({"workspace":{"type":"unbounded"},
            "obstacles":[{"type":"sphere","center":[0,0,0],"radius":-1}],
            "robot":{"radius":0.1,"safety_margin":0.05},
            "control":{"kappa_s":1,"kappa_r":1,"gamma":0.2,"epsilon":0.05},
            "initial_states":[{"x":[1,1,1]}]})"),
        doctest::Contains("radius"), ScenarioError);
}

TEST_CASE("trajectory CSV round-trips bit-exactly") {
    const Scenario sc = Scenario::load(kScenarioDir + "/boxworld.json");
    const HybridTrajectory traj = run(sc.world, sc.params, sc.sim, sc.initial_states[0]);
    REQUIRE(traj.outcome.kind == Outcome::Kind::Converged);

    const std::string path = temp_path("nav3d_roundtrip.csv");
    write_trajectory_csv(path, traj);
    const HybridTrajectory back = read_trajectory_csv(path);

    REQUIRE(back.samples.size() == traj.samples.size());
    for (std::size_t k = 0; k < traj.samples.size(); ++k) {
        const TrajectorySample& a = traj.samples[k];
        const TrajectorySample& b = back.samples[k];
        CHECK(a.t == b.t);
        CHECK(a.j == b.j);
        CHECK(a.xi.m == b.xi.m);
        CHECK(norm(a.xi.x - b.xi.x) == 0.0);
        CHECK(norm(a.xi.h - b.xi.h) == 0.0);
        CHECK(norm(a.xi.a - b.xi.a) == 0.0);
        CHECK(a.xi.s == b.xi.s);
        CHECK(a.gap == b.gap);
        CHECK(norm(a.u - b.u) == 0.0);
    }

    // jump reconstruction from adjacent rows
    REQUIRE(back.jumps.size() == traj.jumps.size());
    for (std::size_t k = 0; k < traj.jumps.size(); ++k) {
        CHECK(back.jumps[k].kind == traj.jumps[k].kind);
        CHECK(back.jumps[k].t == traj.jumps[k].t);
    }

    // identical audit verdicts
    const AuditOptions opts = audit_options_for(sc);
    const AuditReport a = audit(traj, sc.world, sc.params, opts);
    const AuditReport b = audit(back, sc.world, sc.params, opts);
    CHECK(a.passed() == b.passed());
    CHECK(a.min_gap == b.min_gap);
    CHECK(a.max_plane_residual == b.max_plane_residual);
    CHECK(a.jump_count == b.jump_count);
    CHECK(a.hit_norms == b.hit_norms);
    CHECK(a.converged == b.converged);

    std::remove(path.c_str());
}

TEST_CASE("identical runs produce byte-identical CSV") {
    const Scenario sc = Scenario::load(kScenarioDir + "/study1.json");
    const HybridTrajectory t1 = run(sc.world, sc.params, sc.sim, sc.initial_states[0]);
    const HybridTrajectory t2 = run(sc.world, sc.params, sc.sim, sc.initial_states[0]);
    CHECK(trajectory_to_csv(t1) == trajectory_to_csv(t2));
}

TEST_CASE("stored gap column matches recomputed geometry") {
    const Scenario sc = Scenario::load(kScenarioDir + "/study1.json");
    const HybridTrajectory traj = run(sc.world, sc.params, sc.sim, sc.initial_states[0]);
    const std::string path = temp_path("nav3d_gapcheck.csv");
    write_trajectory_csv(path, traj);
    const HybridTrajectory back = read_trajectory_csv(path);
    for (const TrajectorySample& s : back.samples) {
        const double gap = nearest_obstacle(sc.world, s.xi.x).distance - sc.params.r_a;
        CHECK(std::abs(gap - s.gap) <= 1e-9);
    }
    std::remove(path.c_str());
}

TEST_CASE("svg emitters produce plausible documents") {
    const Scenario sc = Scenario::load(kScenarioDir + "/study1.json");
    const HybridTrajectory traj = run(sc.world, sc.params, sc.sim, sc.initial_states[0]);
    const std::vector<const HybridTrajectory*> trajs{&traj};

    const std::string dist = distance_plot_svg(trajs, sc.params.r_a);
    CHECK(dist.find("<svg") != std::string::npos);
    CHECK(dist.find("polyline") != std::string::npos);
    CHECK(dist.find("r_a") != std::string::npos);

    const std::string proj = trajectory_plot_svg(sc.world, trajs);
    CHECK(proj.find("<svg") != std::string::npos);
    CHECK(proj.find("#d62728") != std::string::npos);  // move-to-target segments
    CHECK(proj.find("#1f77b4") != std::string::npos);  // avoidance segments
    CHECK(proj.find("circle") != std::string::npos);   // the spherical obstacle

    // determinism of the emitted text
    CHECK(dist == distance_plot_svg(trajs, sc.params.r_a));
    CHECK(proj == trajectory_plot_svg(sc.world, trajs));
}

TEST_CASE("atomic write replaces files completely") {
    const std::string path = temp_path("nav3d_atomic.txt");
    write_file_atomic(path, "first");
    write_file_atomic(path, "second");
    std::ifstream in(path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content == "second");
    CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
    std::remove(path.c_str());
}
