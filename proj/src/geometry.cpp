#include "nav3d/geometry.hpp"

#include <algorithm>
#include <limits>

namespace nav3d {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double point_mesh_distance(const Vec3& x, const HullMesh& mesh, Vec3* closest) {
    if (mesh.contains(x)) {
        if (closest) *closest = x;
        return 0.0;
    }
    double best = kInf;
    Vec3 best_point{};
    for (const auto& t : mesh.triangles) {
        const Vec3 cp = closest_point_on_triangle(x, mesh.vertices[t[0]], mesh.vertices[t[1]],
                                                  mesh.vertices[t[2]]);
        const double d = distance(x, cp);
        if (d < best) {
            best = d;
            best_point = cp;
        }
    }
    if (closest) *closest = best_point;
    return best;
}

// Convex 1D minimization of lambda -> distance(seg.at(lambda), shape).
double ternary_min_distance(const Segment& seg, const ConvexShape& shape, double tol) {
    double lo = 0.0, hi = 1.0;
    double best = std::min(distance(seg.at(0.0), shape), distance(seg.at(1.0), shape));
    while (hi - lo > tol && best > 0.0) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        const double f1 = distance(seg.at(m1), shape);
        const double f2 = distance(seg.at(m2), shape);
        best = std::min({best, f1, f2});
        if (f1 < f2)
            hi = m2;
        else
            lo = m1;
    }
    return std::min(best, distance(seg.at(0.5 * (lo + hi)), shape));
}

// Separating-axis intersection test for two hull meshes.
bool meshes_intersect(const HullMesh& a, const HullMesh& b) {
    auto separated_along = [&](const Vec3& axis) {
        const double max_a = a.support(axis);
        const double min_a = -a.support(-axis);
        const double max_b = b.support(axis);
        const double min_b = -b.support(-axis);
        return max_a < min_b || max_b < min_a;
    };
    for (const FacePlane& pl : a.planes)
        if (separated_along(pl.normal)) return false;
    for (const FacePlane& pl : b.planes)
        if (separated_along(pl.normal)) return false;
    for (const auto& ea : a.edges) {
        const Vec3 da = a.vertices[ea[1]] - a.vertices[ea[0]];
        for (const auto& eb : b.edges) {
            const Vec3 axis = cross(da, b.vertices[eb[1]] - b.vertices[eb[0]]);
            if (norm2(axis) < 1e-24) continue;  // parallel edges, covered by face axes
            if (separated_along(axis)) return false;
        }
    }
    return true;
}

double mesh_mesh_distance(const HullMesh& a, const HullMesh& b) {
    if (meshes_intersect(a, b)) return 0.0;
    double best = kInf;
    for (const Vec3& v : a.vertices) best = std::min(best, point_mesh_distance(v, b, nullptr));
    for (const Vec3& v : b.vertices) best = std::min(best, point_mesh_distance(v, a, nullptr));
    for (const auto& ea : a.edges) {
        const Segment sa{a.vertices[ea[0]], a.vertices[ea[1]]};
        for (const auto& eb : b.edges) {
            best = std::min(best,
                            segment_segment_distance(sa, {b.vertices[eb[0]], b.vertices[eb[1]]}));
        }
    }
    return best;
}

const HullMesh* mesh_of(const ConvexShape& shape, HullMesh& scratch) {
    if (const auto* p = std::get_if<ConvexPolytope>(&shape)) return &p->mesh();
    if (const auto* b = std::get_if<HalfspaceBox>(&shape)) {
        scratch = box_mesh(*b);
        return &scratch;
    }
    return nullptr;
}

}  // namespace

Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    // Voronoi-region walk over the triangle's features.
    const Vec3 ab = b - a, ac = c - a, ap = p - a;
    const double d1 = dot(ab, ap), d2 = dot(ac, ap);
    if (d1 <= 0.0 && d2 <= 0.0) return a;

    const Vec3 bp = p - b;
    const double d3 = dot(ab, bp), d4 = dot(ac, bp);
    if (d3 >= 0.0 && d4 <= d3) return b;

    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return a + (d1 / (d1 - d3)) * ab;

    const Vec3 cp = p - c;
    const double d5 = dot(ab, cp), d6 = dot(ac, cp);
    if (d6 >= 0.0 && d5 <= d6) return c;

    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return a + (d2 / (d2 - d6)) * ac;

    const double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && d4 - d3 >= 0.0 && d5 - d6 >= 0.0)
        return b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b);

    const double denom = 1.0 / (va + vb + vc);
    return a + (vb * denom) * ab + (vc * denom) * ac;
}

Vec3 closest_point_on_segment(const Vec3& p, const Segment& seg) {
    const Vec3 d = seg.p - seg.q;  // seg.at(1) - seg.at(0)
    const double len2 = norm2(d);
    if (len2 < 1e-30) return seg.q;
    const double t = std::clamp(dot(p - seg.q, d) / len2, 0.0, 1.0);
    return seg.q + t * d;
}

double segment_segment_distance(const Segment& s1, const Segment& s2) {
    const Vec3 p1 = s1.q, d1 = s1.p - s1.q;
    const Vec3 p2 = s2.q, d2 = s2.p - s2.q;
    const Vec3 r = p1 - p2;
    const double a = norm2(d1), e = norm2(d2), f = dot(d2, r);

    double s = 0.0, t = 0.0;
    if (a < 1e-30 && e < 1e-30) {
        return distance(p1, p2);
    } else if (a < 1e-30) {
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        const double c = dot(d1, r);
        if (e < 1e-30) {
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            const double b = dot(d1, d2);
            const double denom = a * e - b * b;
            if (denom > 1e-30) s = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
            t = (b * s + f) / e;
            if (t < 0.0) {
                t = 0.0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (t > 1.0) {
                t = 1.0;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    return distance(p1 + s * d1, p2 + t * d2);
}

bool shape_contains(const ConvexShape& shape, const Vec3& p, double tol) {
    if (const auto* s = std::get_if<Sphere>(&shape)) return distance(p, s->center) <= s->radius + tol;
    if (const auto* b = std::get_if<HalfspaceBox>(&shape)) return b->contains(p, tol);
    return std::get<ConvexPolytope>(shape).mesh().contains(p, tol);
}

double distance(const Vec3& x, const ConvexShape& shape) {
    if (const auto* s = std::get_if<Sphere>(&shape))
        return std::max(0.0, distance(x, s->center) - s->radius);
    if (const auto* b = std::get_if<HalfspaceBox>(&shape))
        return distance(x, clamp(x, b->lo, b->hi));
    return point_mesh_distance(x, std::get<ConvexPolytope>(shape).mesh(), nullptr);
}

Vec3 project(const Vec3& x, const ConvexShape& shape) {
    if (const auto* s = std::get_if<Sphere>(&shape)) {
        const Vec3 d = x - s->center;
        const double n = norm(d);
        if (n <= s->radius) return x;
        return s->center + (s->radius / n) * d;
    }
    if (const auto* b = std::get_if<HalfspaceBox>(&shape)) return clamp(x, b->lo, b->hi);
    Vec3 cp{};
    point_mesh_distance(x, std::get<ConvexPolytope>(shape).mesh(), &cp);
    return cp;
}

double segment_distance(const Segment& seg, const ConvexShape& shape, double tol) {
    if (const auto* s = std::get_if<Sphere>(&shape)) {
        const double d = distance(s->center, closest_point_on_segment(s->center, seg));
        return std::max(0.0, d - s->radius);
    }
    return ternary_min_distance(seg, shape, tol);
}

double pair_distance(const ConvexShape& s1, const ConvexShape& s2) {
    if (const auto* a = std::get_if<Sphere>(&s1)) {
        if (const auto* b = std::get_if<Sphere>(&s2))
            return std::max(0.0, distance(a->center, b->center) - a->radius - b->radius);
        return std::max(0.0, distance(a->center, s2) - a->radius);
    }
    if (std::holds_alternative<Sphere>(s2)) return pair_distance(s2, s1);

    HullMesh scratch1, scratch2;
    const HullMesh* m1 = mesh_of(s1, scratch1);
    const HullMesh* m2 = mesh_of(s2, scratch2);
    return mesh_mesh_distance(*m1, *m2);
}

}  // namespace nav3d
