#pragma once

#include <array>
#include <cstdint>
#include <variant>
#include <vector>

#include "nav3d/vec3.hpp"

namespace nav3d {

struct Segment {
    Vec3 p;
    Vec3 q;

    Vec3 at(double lambda) const { return lambda * p + (1.0 - lambda) * q; }
    double length() const { return distance(p, q); }
};

struct Sphere {
    Vec3 center;
    double radius = 1.0;
};

// Axis-aligned box given by its componentwise min/max corners.
struct HalfspaceBox {
    Vec3 lo;
    Vec3 hi;

    Vec3 center() const { return 0.5 * (lo + hi); }
    Vec3 corner(int k) const {
        return {(k & 1) ? hi.x : lo.x, (k & 2) ? hi.y : lo.y, (k & 4) ? hi.z : lo.z};
    }
    bool contains(const Vec3& p, double tol = 0.0) const {
        return p.x >= lo.x - tol && p.y >= lo.y - tol && p.z >= lo.z - tol &&
               p.x <= hi.x + tol && p.y <= hi.y + tol && p.z <= hi.z + tol;
    }
};

struct FacePlane {
    Vec3 normal;     // outward unit normal
    double offset;   // plane is { p : dot(normal, p) == offset }
};

// Triangulated boundary of a convex polytope. Triangles are wound so their
// plane normals point outward; `edges` holds deduplicated vertex index pairs.
struct HullMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<std::array<int, 2>> edges;
    std::vector<FacePlane> planes;  // deduplicated supporting face planes
    Vec3 interior_point;            // strictly inside the hull

    Vec3 bounding_center;
    double bounding_radius = 0.0;

    bool contains(const Vec3& p, double tol = kGeomTol) const;
    double support(const Vec3& direction) const;  // max over vertices of dot(v, direction)
};

// Builds the convex hull of `points`. Input points inside the hull are
// dropped, so the resulting vertex list is its own convex hull. Throws
// ScenarioError when the points do not span 3D (fewer than 4 affinely
// independent points).
HullMesh build_hull(const std::vector<Vec3>& points);

// Hull mesh of an axis-aligned box (8 corners, 12 triangles, 6 planes).
HullMesh box_mesh(const HalfspaceBox& box);

// Compact convex obstacle canonicalized at construction.
class ConvexPolytope {
public:
    explicit ConvexPolytope(const std::vector<Vec3>& points) : mesh_(build_hull(points)) {}

    const HullMesh& mesh() const { return mesh_; }
    const std::vector<Vec3>& vertices() const { return mesh_.vertices; }

private:
    HullMesh mesh_;
};

using ConvexShape = std::variant<Sphere, ConvexPolytope, HalfspaceBox>;

// Center/radius of a ball that encloses the shape; used for cheap pruning.
Sphere bounding_sphere(const ConvexShape& shape);

}  // namespace nav3d
