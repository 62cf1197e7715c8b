#pragma once

#include <cmath>
#include <limits>

#include "nav3d/simd/kernels.hpp"

// Per-element reference arithmetic shared by the scalar kernels and the
// vector kernels' tail loops. The operation order here is the contract the
// SIMD variants replicate lane-for-lane.
namespace nav3d::simd::detail {

inline constexpr double kMiss = std::numeric_limits<double>::infinity();

struct KernelTable {
    void (*ray_sphere)(const Vec3&, const RaySoA&, const Sphere&, double*);
    void (*ray_box)(const Vec3&, const RaySoA&, const HalfspaceBox&, double*);
    void (*ray_box_exit)(const Vec3&, const RaySoA&, const HalfspaceBox&, double*);
    void (*ray_planes)(const Vec3&, const RaySoA&, const FacePlane*, std::size_t, double*);
    void (*point_sphere_distance)(const PointSoA&, const Sphere&, double*);
    void (*point_box_distance)(const PointSoA&, const HalfspaceBox&, double*);
    void (*point_segment_distance)(const PointSoA&, const Vec3&, const Vec3&, double*);
};

const KernelTable& scalar_table();
#if defined(__x86_64__) || defined(_M_X64)
const KernelTable& avx2_table();
#endif

inline double ray_sphere_one(double dx, double dy, double dz, double mx, double my, double mz,
                             double c2) {
    const double b = (dx * mx + dy * my) + dz * mz;
    const double disc = b * b - c2;
    const double t = b - std::sqrt(disc);
    return (disc >= 0.0 && t >= 0.0) ? t : kMiss;
}

// One slab of the branch-free slab method. `inv` is 1/d with IEEE inf for
// d == 0; degenerate lanes are overridden by the inside/outside test.
inline void slab_one(double o, double d, double inv, double lo, double hi, double& tnear,
                     double& tfar) {
    const double t1 = (lo - o) * inv;
    const double t2 = (hi - o) * inv;
    double tn = (t1 < t2) ? t1 : t2;
    double tf = (t1 < t2) ? t2 : t1;
    if (d == 0.0) {
        const bool inside = (o >= lo) && (o <= hi);
        tn = inside ? -kMiss : kMiss;
        tf = inside ? kMiss : -kMiss;
    }
    tnear = (tn > tnear) ? tn : tnear;
    tfar = (tf < tfar) ? tf : tfar;
}

inline void ray_box_range_one(const Vec3& o, double dx, double dy, double dz,
                              const HalfspaceBox& box, double& tnear, double& tfar) {
    tnear = -kMiss;
    tfar = kMiss;
    slab_one(o.x, dx, 1.0 / dx, box.lo.x, box.hi.x, tnear, tfar);
    slab_one(o.y, dy, 1.0 / dy, box.lo.y, box.hi.y, tnear, tfar);
    slab_one(o.z, dz, 1.0 / dz, box.lo.z, box.hi.z, tnear, tfar);
}

inline double ray_box_one(const Vec3& o, double dx, double dy, double dz,
                          const HalfspaceBox& box) {
    double tnear, tfar;
    ray_box_range_one(o, dx, dy, dz, box, tnear, tfar);
    const double tenter = (tnear > 0.0) ? tnear : 0.0;
    return (tenter <= tfar) ? tenter : kMiss;
}

inline double ray_box_exit_one(const Vec3& o, double dx, double dy, double dz,
                               const HalfspaceBox& box) {
    double tnear, tfar;
    ray_box_range_one(o, dx, dy, dz, box, tnear, tfar);
    return (tfar >= 0.0) ? tfar : kMiss;
}

inline double ray_planes_one(const Vec3& o, double dx, double dy, double dz,
                             const FacePlane* planes, std::size_t nplanes) {
    double tenter = -kMiss;
    double texit = kMiss;
    bool miss = false;
    for (std::size_t f = 0; f < nplanes; ++f) {
        const Vec3& n = planes[f].normal;
        const double denom = (n.x * dx + n.y * dy) + n.z * dz;
        const double num = planes[f].offset - ((n.x * o.x + n.y * o.y) + n.z * o.z);
        const double q = num / denom;
        if (denom > 0.0) {
            texit = (q < texit) ? q : texit;
        } else if (denom < 0.0) {
            tenter = (q > tenter) ? q : tenter;
        } else {
            miss = miss || (num < 0.0);
        }
    }
    return (!miss && tenter >= 0.0 && tenter <= texit) ? tenter : kMiss;
}

inline double point_sphere_distance_one(double px, double py, double pz, const Sphere& s) {
    const double ex = px - s.center.x;
    const double ey = py - s.center.y;
    const double ez = pz - s.center.z;
    const double d = std::sqrt((ex * ex + ey * ey) + ez * ez) - s.radius;
    return (d > 0.0) ? d : 0.0;
}

inline double point_box_distance_one(double px, double py, double pz, const HalfspaceBox& b) {
    auto axis = [](double p, double lo, double hi) {
        const double a = lo - p;
        const double c = p - hi;
        const double m = (a > c) ? a : c;
        return (m > 0.0) ? m : 0.0;
    };
    const double ex = axis(px, b.lo.x, b.hi.x);
    const double ey = axis(py, b.lo.y, b.hi.y);
    const double ez = axis(pz, b.lo.z, b.hi.z);
    return std::sqrt((ex * ex + ey * ey) + ez * ez);
}

inline double point_segment_distance_one(double px, double py, double pz, const Vec3& a,
                                          double sx, double sy, double sz, double inv_len2) {
    double t = ((px - a.x) * sx + (py - a.y) * sy) + (pz - a.z) * sz;
    t *= inv_len2;
    t = (t > 0.0) ? t : 0.0;
    t = (t < 1.0) ? t : 1.0;
    const double ex = px - (a.x + t * sx);
    const double ey = py - (a.y + t * sy);
    const double ez = pz - (a.z + t * sz);
    return std::sqrt((ex * ex + ey * ey) + ez * ez);
}

}  // namespace nav3d::simd::detail
