#include <doctest.h>

#include <cmath>

#include "nav3d/world.hpp"
#include "oracles.hpp"

using namespace nav3d;
namespace orc = nav3d::oracles;

namespace {

World two_spheres_world() {
    World w;
    w.obstacles.push_back(Sphere{{3, 0, 0}, 1.0});
    w.obstacles.push_back(Sphere{{-3, 0, 0}, 1.0});
    w.robot_radius = 0.15;
    w.safety_margin = 0.05;
    return w;
}

}  // namespace

TEST_CASE("validate on a feasible two-sphere world") {
    const World w = two_spheres_world();
    const double gamma = 0.2;
    const FeasibilityReport report = validate(w, gamma, gamma / 3, 2 * gamma / 3, 0.05);
    CHECK(report.min_pair_separation == doctest::Approx(4.0));
    CHECK(report.d0 == doctest::Approx(2.0 - 0.15));
    CHECK(report.r_bar_s == doctest::Approx(std::min(2.0 - 0.15, 1.85)));
    CHECK(report.ok);
    CHECK(report.violations.empty());
}

TEST_CASE("validate flags overlapping obstacles") {
    World w = two_spheres_world();
    w.obstacles.push_back(Sphere{{3.5, 0, 0}, 1.0});  // overlaps the first sphere
    const FeasibilityReport report = validate(w, 0.2, 0.0667, 0.1333, 0.05);
    CHECK_FALSE(report.ok);
    bool mentions_assumption = false;
    for (const auto& v : report.violations)
        if (v.find("Assumption 1") != std::string::npos) mentions_assumption = true;
    CHECK(mentions_assumption);
}

TEST_CASE("validate flags a target inside the dilated obstacle union") {
    World w;
    w.obstacles.push_back(Sphere{{0.2, 0, 0}, 0.3});  // origin inside the sphere
    w.robot_radius = 0.15;
    w.safety_margin = 0.05;
    const FeasibilityReport report = validate(w, 0.2, 0.0667, 0.1333, 0.05);
    CHECK_FALSE(report.ok);
}

TEST_CASE("validate warns for gamma at or below the safety margin") {
    World w = two_spheres_world();
    w.safety_margin = 0.25;
    const FeasibilityReport report = validate(w, 0.2, 0.0667, 0.1333, 0.05);
    CHECK(report.ok);  // weaker range is accepted
    CHECK_FALSE(report.warnings.empty());
}

TEST_CASE("validate is monotone under shrinking margins") {
    orc::Rng rng(31);
    int feasible_seen = 0;
    for (int i = 0; i < 40; ++i) {
        World w;
        w.obstacles.push_back(orc::random_sphere(rng));
        w.obstacles.push_back(orc::random_box(rng));
        w.robot_radius = 0.1;
        w.safety_margin = 0.05;
        const double gamma = 0.15;
        const FeasibilityReport a = validate(w, gamma, gamma / 3, 2 * gamma / 3, 0.05);
        if (!a.ok) continue;
        ++feasible_seen;
        w.safety_margin *= 0.5;
        const FeasibilityReport b =
            validate(w, gamma / 2, gamma / 6, gamma / 3, 0.05);
        CHECK(b.ok);
    }
    CHECK(feasible_seen > 0);
}

TEST_CASE("nearest_obstacle basics") {
    World w;
    w.obstacles.push_back(Sphere{{3, 0, 0}, 1.0});
    w.robot_radius = 0.1;
    w.safety_margin = 0.05;

    const NearestHit hit = nearest_obstacle(w, {1, 0, 0});
    CHECK(hit.obstacle_index == 1);
    CHECK(hit.distance == doctest::Approx(1.0));
    CHECK(norm(hit.projection - Vec3{2, 0, 0}) <= 1e-12);
    CHECK(norm(hit.x_pi - Vec3{-1, 0, 0}) <= 1e-12);
}

TEST_CASE("nearest_obstacle ties break to the lowest index") {
    World w = two_spheres_world();
    const NearestHit hit = nearest_obstacle(w, {0, 0.5, 0});  // exactly equidistant
    CHECK(hit.obstacle_index == 1);
}

TEST_CASE("nearest_obstacle against the workspace boundary") {
    World w;
    w.workspace = HalfspaceBox{{-2, -2, -2}, {2, 2, 2}};
    w.obstacles.push_back(Sphere{{0, 0, 0}, 0.3});
    w.robot_radius = 0.1;
    w.safety_margin = 0.05;

    const NearestHit hit = nearest_obstacle(w, {1.8, 0.3, -0.2});
    CHECK(hit.obstacle_index == 0);
    CHECK(hit.distance == doctest::Approx(0.2));
    CHECK(norm(hit.projection - Vec3{2.0, 0.3, -0.2}) <= 1e-12);
    // the wall projection sits on the boundary obstacle
    CHECK(w.obstacle_distance(0, hit.projection) <= 1e-9);
}

TEST_CASE("free_space_contains matches the distance oracle") {
    orc::Rng poly_rng(37);
    World w;
    w.workspace = HalfspaceBox{{-3, -3, -3}, {3, 3, 3}};
    w.obstacles.push_back(Sphere{{1.5, 0, 0}, 0.4});
    w.obstacles.push_back(orc::random_polytope(poly_rng));
    w.robot_radius = 0.1;
    w.safety_margin = 0.05;

    CHECK(free_space_contains(w, 0.0, {2.5, 2.5, 2.5}));
    // boundary of the eroded set is included (closed erosion)
    CHECK(free_space_contains(w, 0.1, {1.5, 0.0, 0.5}));

    orc::Rng rng(41);
    for (int i = 0; i < 2000; ++i) {
        const Vec3 x = orc::random_in_box(rng, {-3.5, -3.5, -3.5}, {3.5, 3.5, 3.5});
        const double y = 0.15;
        const bool inside_ws = w.workspace->contains(x);
        const bool by_distance = inside_ws && nearest_obstacle(w, x).distance >= y;
        CHECK(free_space_contains(w, y, x) == by_distance);
    }
}

TEST_CASE("eroded workspace membership equals a distance bound") {
    World w = two_spheres_world();
    const double r_a = w.augmented_radius();
    orc::Rng rng(43);
    for (int i = 0; i < 2000; ++i) {
        const Vec3 x = orc::random_in_box(rng, {-5, -5, -5}, {5, 5, 5});
        CHECK(free_space_contains(w, r_a, x) == (nearest_obstacle(w, x).distance >= r_a));
    }
}

TEST_CASE("nearest projection lies on the reported obstacle") {
    orc::Rng rng(47);
    World w;
    w.workspace = HalfspaceBox{{-4, -4, -4}, {4, 4, 4}};
    w.obstacles.push_back(orc::random_sphere(rng));
    w.obstacles.push_back(orc::random_box(rng));
    w.obstacles.push_back(orc::random_polytope(rng));
    w.robot_radius = 0.05;
    w.safety_margin = 0.05;
    for (int i = 0; i < 500; ++i) {
        const Vec3 x = orc::random_in_box(rng, {-4, -4, -4}, {4, 4, 4});
        const NearestHit hit = nearest_obstacle(w, x);
        CHECK(w.obstacle_distance(hit.obstacle_index, hit.projection) <= 1e-9);
        CHECK(std::abs(norm(hit.x_pi) - hit.distance) <= 1e-9);
    }
}
