#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <utility>

#include "nav3d/errors.hpp"
#include "nav3d/shapes.hpp"

namespace nav3d {

namespace {

struct Face {
    int a, b, c;
    Vec3 normal;
    double offset;
    bool alive = true;
};

Face make_face(int a, int b, int c, const std::vector<Vec3>& pts, const Vec3& interior) {
    Face f{a, b, c, {}, 0.0};
    Vec3 n = cross(pts[b] - pts[a], pts[c] - pts[a]);
    const double len = norm(n);
    n = (len > 0.0) ? n / len : Vec3{0, 0, 1};
    if (dot(n, interior - pts[a]) > 0.0) {
        std::swap(f.b, f.c);
        n = -n;
    }
    f.normal = n;
    f.offset = dot(n, pts[f.a]);
    return f;
}

double extent_scale(const std::vector<Vec3>& pts) {
    Vec3 lo = pts[0], hi = pts[0];
    for (const Vec3& p : pts) {
        lo = min(lo, p);
        hi = max(hi, p);
    }
    const Vec3 d = hi - lo;
    return std::max({1.0, d.x, d.y, d.z});
}

}  // namespace

bool HullMesh::contains(const Vec3& p, double tol) const {
    for (const FacePlane& pl : planes)
        if (dot(pl.normal, p) > pl.offset + tol) return false;
    return true;
}

double HullMesh::support(const Vec3& direction) const {
    double best = -std::numeric_limits<double>::infinity();
    for (const Vec3& v : vertices) best = std::max(best, dot(v, direction));
    return best;
}

HullMesh build_hull(const std::vector<Vec3>& points) {
    for (const Vec3& p : points)
        if (!finite(p)) throw ScenarioError("polytope vertex is not finite");
    if (points.size() < 4) throw ScenarioError("polytope needs at least 4 vertices");

    const double eps = kGeomTol * extent_scale(points);
    const int n = static_cast<int>(points.size());

    // Initial tetrahedron from extreme points.
    int i0 = 0, i1 = 0;
    double best = -1.0;
    for (int axis = 0; axis < 3; ++axis) {
        int lo = 0, hi = 0;
        for (int i = 1; i < n; ++i) {
            if (points[i][axis] < points[lo][axis]) lo = i;
            if (points[i][axis] > points[hi][axis]) hi = i;
        }
        const double d = distance(points[lo], points[hi]);
        if (d > best) {
            best = d;
            i0 = lo;
            i1 = hi;
        }
    }
    if (best < eps) throw ScenarioError("polytope vertices are coincident");

    const Vec3 axis_dir = (points[i1] - points[i0]) / best;
    int i2 = -1;
    best = eps;
    for (int i = 0; i < n; ++i) {
        const Vec3 d = points[i] - points[i0];
        const double off = norm(d - dot(d, axis_dir) * axis_dir);
        if (off > best) {
            best = off;
            i2 = i;
        }
    }
    if (i2 < 0) throw ScenarioError("polytope vertices are collinear");

    Vec3 plane_n = normalized(cross(points[i1] - points[i0], points[i2] - points[i0]));
    int i3 = -1;
    best = eps;
    for (int i = 0; i < n; ++i) {
        const double off = std::abs(dot(plane_n, points[i] - points[i0]));
        if (off > best) {
            best = off;
            i3 = i;
        }
    }
    if (i3 < 0) throw ScenarioError("polytope vertices are coplanar");

    const Vec3 interior =
        0.25 * (points[i0] + points[i1] + points[i2] + points[i3]);

    std::vector<Face> faces;
    faces.push_back(make_face(i0, i1, i2, points, interior));
    faces.push_back(make_face(i0, i1, i3, points, interior));
    faces.push_back(make_face(i0, i2, i3, points, interior));
    faces.push_back(make_face(i1, i2, i3, points, interior));

    // Incremental insertion: remove faces visible from the new point and
    // close the hull with a cone of faces over the horizon edges.
    for (int p = 0; p < n; ++p) {
        if (p == i0 || p == i1 || p == i2 || p == i3) continue;
        std::vector<int> visible;
        for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
            if (!faces[f].alive) continue;
            if (dot(faces[f].normal, points[p]) - faces[f].offset > eps) visible.push_back(f);
        }
        if (visible.empty()) continue;  // inside or on the current hull

        std::set<std::pair<int, int>> directed;
        for (int f : visible) {
            directed.insert({faces[f].a, faces[f].b});
            directed.insert({faces[f].b, faces[f].c});
            directed.insert({faces[f].c, faces[f].a});
        }
        for (int f : visible) faces[f].alive = false;
        for (const auto& [u, v] : directed) {
            if (directed.count({v, u})) continue;  // interior edge of the visible patch
            faces.push_back(make_face(u, v, p, points, interior));
        }
    }

    // Compact vertex list to the ones actually on the hull.
    std::map<int, int> remap;
    HullMesh mesh;
    for (const Face& f : faces) {
        if (!f.alive) continue;
        for (int idx : {f.a, f.b, f.c}) {
            if (!remap.count(idx)) {
                remap[idx] = static_cast<int>(mesh.vertices.size());
                mesh.vertices.push_back(points[idx]);
            }
        }
        mesh.triangles.push_back({remap[f.a], remap[f.b], remap[f.c]});
    }

    std::set<std::pair<int, int>> edge_set;
    for (const auto& t : mesh.triangles) {
        edge_set.insert(std::minmax(t[0], t[1]));
        edge_set.insert(std::minmax(t[1], t[2]));
        edge_set.insert(std::minmax(t[0], t[2]));
    }
    for (const auto& [u, v] : edge_set) mesh.edges.push_back({u, v});

    for (const Face& f : faces) {
        if (!f.alive) continue;
        bool dup = false;
        for (const FacePlane& pl : mesh.planes) {
            if (distance(pl.normal, f.normal) < 1e-6 && std::abs(pl.offset - f.offset) < eps) {
                dup = true;
                break;
            }
        }
        if (!dup) mesh.planes.push_back({f.normal, f.offset});
    }

    Vec3 centroid{};
    for (const Vec3& v : mesh.vertices) centroid += v;
    centroid = centroid / static_cast<double>(mesh.vertices.size());
    mesh.interior_point = centroid;
    mesh.bounding_center = centroid;
    for (const Vec3& v : mesh.vertices)
        mesh.bounding_radius = std::max(mesh.bounding_radius, distance(centroid, v));

    for (const Vec3& p : points) {
        if (!mesh.contains(p, 100.0 * eps))
            throw ScenarioError("convex hull construction failed to enclose all input points");
    }
    return mesh;
}

HullMesh box_mesh(const HalfspaceBox& box) {
    std::vector<Vec3> corners;
    corners.reserve(8);
    for (int k = 0; k < 8; ++k) corners.push_back(box.corner(k));
    return build_hull(corners);
}

Sphere bounding_sphere(const ConvexShape& shape) {
    if (const auto* s = std::get_if<Sphere>(&shape)) return *s;
    if (const auto* b = std::get_if<HalfspaceBox>(&shape))
        return {b->center(), 0.5 * distance(b->lo, b->hi)};
    const auto& mesh = std::get<ConvexPolytope>(shape).mesh();
    return {mesh.bounding_center, mesh.bounding_radius};
}

}  // namespace nav3d
