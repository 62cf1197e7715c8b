#pragma once

#include "nav3d/shapes.hpp"
#include "nav3d/vec3.hpp"

namespace nav3d {

// Closest point on a triangle (a, b, c) to p.
Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

// Closest point on a segment to p.
Vec3 closest_point_on_segment(const Vec3& p, const Segment& seg);

// Minimum distance between two segments.
double segment_segment_distance(const Segment& s1, const Segment& s2);

bool shape_contains(const ConvexShape& shape, const Vec3& p, double tol = kGeomTol);

// Euclidean distance from a point to a compact convex shape (0 when inside).
double distance(const Vec3& x, const ConvexShape& shape);

// Closest point of the shape to x. Points inside the shape project to
// themselves.
Vec3 project(const Vec3& x, const ConvexShape& shape);

// min over lambda in [0,1] of distance(seg.at(lambda), shape). The objective
// is convex in lambda; non-analytic cases use ternary search refined to
// `tol` on the parameter interval.
double segment_distance(const Segment& seg, const ConvexShape& shape, double tol = 1e-10);

// Minimum distance between two shapes; 0 iff they intersect. Exact feature
// enumeration (vertex/face/edge pairs) with a separating-axis intersection
// test for the polytope-polytope case.
double pair_distance(const ConvexShape& s1, const ConvexShape& s2);

}  // namespace nav3d
