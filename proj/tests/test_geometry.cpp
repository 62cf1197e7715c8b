#include <doctest.h>

#include <cmath>

#include "nav3d/geometry.hpp"
#include "oracles.hpp"

using namespace nav3d;
namespace orc = nav3d::oracles;

namespace {
const double kSqrt3 = std::sqrt(3.0);

bool mat_close(const Mat3& a, const Mat3& b, double tol) {
    return frobenius_norm(a - b) <= tol;
}
}  // namespace

TEST_CASE("skew matches the cross-product matrix") {
    const Mat3 s = skew({1, 0, 0});
    CHECK(s(0, 0) == 0.0);
    CHECK(s(0, 1) == 0.0);
    CHECK(s(0, 2) == 0.0);
    CHECK(s(1, 2) == -1.0);
    CHECK(s(2, 1) == 1.0);

    CHECK(mat_close(skew({0, 0, 0}), Mat3::zero(), 0.0));

    const Vec3 v{1, 2, 3};
    CHECK(norm(skew(v) * v) == 0.0);

    orc::Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        const Vec3 a = orc::random_in_box(rng, {-5, -5, -5}, {5, 5, 5});
        const Vec3 b = orc::random_in_box(rng, {-5, -5, -5}, {5, 5, 5});
        CHECK(norm(skew(a) * b - cross(a, b)) <= 1e-12);
        CHECK(mat_close(skew(a) + transpose(skew(a)), Mat3::zero(), 1e-15));
    }
}

TEST_CASE("rotation_about is the quarter turn about the axis") {
    const Mat3 r = rotation_about({0, 0, 1});
    CHECK(r(0, 0) == doctest::Approx(0.0));
    CHECK(r(0, 1) == doctest::Approx(-1.0));
    CHECK(r(1, 0) == doctest::Approx(1.0));
    CHECK(r(2, 2) == doctest::Approx(1.0));

    const Vec3 a{0, 1, 0};
    CHECK(norm(rotation_about(a) * a - a) <= 1e-12);

    const Vec3 diag = (1.0 / kSqrt3) * Vec3{1, 1, 1};
    const Mat3 rd = rotation_about(diag);
    CHECK(mat_close(transpose(rd) * rd, Mat3::identity(), 1e-9));
    CHECK(det(rd) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(mat_close(rd, orc::quarter_turn_reference(diag), 1e-12));

    orc::Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const Vec3 axis = orc::random_unit(rng);
        const Mat3 rr = rotation_about(axis);
        CHECK(mat_close(rr, orc::quarter_turn_reference(axis), 1e-12));
        const Vec3 v = orc::random_in_box(rng, {-3, -3, -3}, {3, 3, 3});
        CHECK(std::abs(norm(rr * v) - norm(v)) <= 1e-9);
    }

    CHECK_THROWS_AS(rotation_about({0, 0, 2}), NonUnitAxis);
}

TEST_CASE("tangent_projector projects onto the orthogonal plane") {
    const Mat3 p = tangent_projector({0, 0, 1});
    CHECK(p(0, 0) == doctest::Approx(1.0));
    CHECK(p(1, 1) == doctest::Approx(1.0));
    CHECK(p(2, 2) == doctest::Approx(0.0));

    // non-unit axis, in-plane vector is fixed
    CHECK(norm(tangent_projector({0, 0, 2}) * Vec3{3, 4, 0} - Vec3{3, 4, 0}) <= 1e-12);

    orc::Rng rng(13);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 a = orc::random_unit(rng);
        const Vec3 z = orc::random_in_box(rng, {-3, -3, -3}, {3, 3, 3});
        const Mat3 pa = tangent_projector(a);
        CHECK(dot(z, pa * z) >= -1e-12);              // quadratic form non-negative
        CHECK(norm(pa * a) <= 1e-9);                  // axis is annihilated
        CHECK(mat_close(pa * pa, pa, 1e-9));          // idempotent
        CHECK(mat_close(transpose(pa), pa, 1e-15));   // symmetric
        // decomposition identity
        CHECK(norm(dot(a, z) * a + pa * z - z) <= 1e-9);
    }

    CHECK_THROWS_AS(tangent_projector({0, 0, 0}), ZeroAxis);
}

TEST_CASE("point distance and projection on the shape catalog") {
    const ConvexShape unit_sphere = Sphere{{0, 0, 0}, 1.0};
    CHECK(distance({3, 0, 0}, unit_sphere) == doctest::Approx(2.0));
    CHECK(distance({0.2, 0.1, 0}, unit_sphere) == 0.0);
    CHECK(norm(project({3, 0, 0}, unit_sphere) - Vec3{1, 0, 0}) <= 1e-12);

    const ConvexShape unit_cube = HalfspaceBox{{0, 0, 0}, {1, 1, 1}};
    // frozen: dense surface sampling of the cube at 1e-3 resolution
    const auto dense = orc::dense_cube_surface({0, 0, 0}, {1, 1, 1}, 1e-3);
    const double sampled = orc::min_distance_to_points({2, 2, 2}, dense);
    CHECK(std::abs(distance({2, 2, 2}, unit_cube) - sampled) <= 1e-3);
    CHECK(distance({2, 2, 2}, unit_cube) == doctest::Approx(kSqrt3).epsilon(1e-12));

    CHECK(norm(project({0.5, 0.5, 0.5}, unit_cube) - Vec3{0.5, 0.5, 0.5}) == 0.0);
    CHECK(norm(project({2, 0.5, -1}, unit_cube) - Vec3{1, 0.5, 0}) == 0.0);  // clamp, exact
}

TEST_CASE("projection optimality and consistency on random shapes") {
    orc::Rng rng(17);
    for (int i = 0; i < 60; ++i) {
        ConvexShape shape;
        switch (i % 3) {
            case 0: shape = orc::random_sphere(rng); break;
            case 1: shape = orc::random_box(rng); break;
            default: shape = orc::random_polytope(rng); break;
        }
        for (int k = 0; k < 5; ++k) {
            const Vec3 x = orc::random_in_box(rng, {-4, -4, -4}, {4, 4, 4});
            const Vec3 p = project(x, shape);
            const double d = distance(x, shape);
            CHECK(shape_contains(shape, p, 1e-9));
            CHECK(std::abs(d - distance(x, p)) <= 1e-9);
            // no sampled surface point beats the projection
            const auto samples = orc::sample_surface(shape, 400, rng);
            CHECK(orc::min_distance_to_points(x, samples) >= d - 1e-6);
            // triangle consistency through a second random point
            const Vec3 y = orc::random_in_box(rng, {-4, -4, -4}, {4, 4, 4});
            CHECK(distance(x, shape) <= distance(x, y) + distance(y, shape) + 1e-9);
        }
    }
}

TEST_CASE("segment distance") {
    const ConvexShape s1 = Sphere{{0, 0, 0}, 0.5};
    CHECK(segment_distance({{-2, 1, 0}, {2, 1, 0}}, s1) == doctest::Approx(0.5));

    const ConvexShape s2 = Sphere{{2, 0.9, 0}, 0.5};
    CHECK(segment_distance({{3, 0, 0}, {0, 0, 0}}, s2) == doctest::Approx(0.4).epsilon(1e-9));

    // endpoint inside: distance is zero
    const ConvexShape box = HalfspaceBox{{-1, -1, -1}, {1, 1, 1}};
    CHECK(segment_distance({{0, 0, 0}, {5, 0, 0}}, box) == 0.0);

    orc::Rng rng(23);
    for (int i = 0; i < 80; ++i) {
        ConvexShape shape;
        switch (i % 3) {
            case 0: shape = orc::random_sphere(rng); break;
            case 1: shape = orc::random_box(rng); break;
            default: shape = orc::random_polytope(rng); break;
        }
        const Segment seg{orc::random_in_box(rng, {-4, -4, -4}, {4, 4, 4}),
                          orc::random_in_box(rng, {-4, -4, -4}, {4, 4, 4})};
        const double got = segment_distance(seg, shape);
        const double ref = orc::golden_section_segment_distance(seg, shape);
        CHECK(std::abs(got - ref) <= 1e-7);
        CHECK(got <= std::min(distance(seg.p, shape), distance(seg.q, shape)) + 1e-12);
    }
}

TEST_CASE("pair distance") {
    CHECK(pair_distance(Sphere{{3, 0, 0}, 1.0}, Sphere{{-3, 0, 0}, 1.0}) == doctest::Approx(4.0));
    CHECK(pair_distance(Sphere{{0, 0, 0}, 1.0}, Sphere{{1, 0, 0}, 1.0}) == 0.0);

    const ConvexShape ball = Sphere{{0, 0, 0}, 1.0};
    const ConvexShape cube = HalfspaceBox{{2, 2, 2}, {3, 3, 3}};
    CHECK(pair_distance(ball, cube) == doctest::Approx(2.0 * kSqrt3 - 1.0).epsilon(1e-12));
    CHECK(std::abs(pair_distance(ball, cube) -
                   orc::alternating_projection_distance(ball, cube)) <= 1e-6);

    orc::Rng rng(29);
    int overlaps = 0;
    for (int i = 0; i < 60; ++i) {
        ConvexShape a, b;
        switch (i % 3) {
            case 0: a = orc::random_polytope(rng); break;
            case 1: a = orc::random_box(rng); break;
            default: a = orc::random_sphere(rng); break;
        }
        switch ((i / 3) % 3) {
            case 0: b = orc::random_polytope(rng); break;
            case 1: b = orc::random_box(rng); break;
            default: b = orc::random_sphere(rng); break;
        }
        const double got = pair_distance(a, b);
        CHECK(got == pair_distance(b, a));  // symmetric
        const double ref = orc::alternating_projection_distance(a, b);
        if (got == 0.0) {
            ++overlaps;
            CHECK(ref <= 1e-5);
        } else {
            CHECK(std::abs(got - ref) <= 1e-6);
        }
    }
    CHECK(overlaps > 0);  // the draw produces intersecting pairs too
}

TEST_CASE("hull canonicalization") {
    // cube corners plus interior and face-interior points collapse to 8 vertices
    std::vector<Vec3> pts;
    for (int k = 0; k < 8; ++k)
        pts.push_back({(k & 1) ? 1.0 : 0.0, (k & 2) ? 1.0 : 0.0, (k & 4) ? 1.0 : 0.0});
    pts.push_back({0.5, 0.5, 0.5});
    pts.push_back({0.5, 0.5, 0.0});
    pts.push_back({0.25, 0.25, 0.25});
    const ConvexPolytope poly(pts);
    CHECK(poly.vertices().size() == 8);
    CHECK(poly.mesh().planes.size() == 6);

    CHECK_THROWS_AS(ConvexPolytope({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}}), ScenarioError);
    CHECK_THROWS_AS(ConvexPolytope({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}}), ScenarioError);
}
