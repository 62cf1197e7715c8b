#pragma once

#include <cstddef>

#include "nav3d/shapes.hpp"
#include "nav3d/vec3.hpp"

// Batch geometry kernels for the data-parallel inner loops (ray casting and
// bulk distance queries). Each kernel has a scalar reference implementation
// and an AVX2 variant selected at runtime; the variants compute identical
// per-lane arithmetic, so results are bitwise equal.
namespace nav3d::simd {

enum class Impl { Scalar, Avx2 };

// Implementation picked at startup from CPU features.
Impl active_impl();
// Force an implementation (tests); returns false if unsupported on this CPU.
bool set_impl(Impl impl);
bool avx2_available();

// Structure-of-arrays views. All arrays have length n.
struct RaySoA {
    const double* dx;
    const double* dy;
    const double* dz;
    std::size_t n;
};

struct PointSoA {
    const double* px;
    const double* py;
    const double* pz;
    std::size_t n;
};

// Entry parameter t >= 0 of the first sphere-boundary hit of origin + t*dir
// (unit directions), +inf on miss. Rays starting inside report a miss.
void ray_sphere(const Vec3& origin, const RaySoA& rays, const Sphere& sphere, double* t_out);

// Entry parameter of the first box hit, +inf on miss.
void ray_box(const Vec3& origin, const RaySoA& rays, const HalfspaceBox& box, double* t_out);

// Exit parameter of a ray leaving the box; +inf when the ray never leaves a
// slab (cannot happen for a bounded box) or starts past it. Origins are
// expected inside the box (workspace boundary sensing).
void ray_box_exit(const Vec3& origin, const RaySoA& rays, const HalfspaceBox& box, double* t_out);

// Entry parameter of the first hit of the convex region bounded by `planes`
// (outward normals), +inf on miss.
void ray_planes(const Vec3& origin, const RaySoA& rays, const FacePlane* planes,
                std::size_t nplanes, double* t_out);

void point_sphere_distance(const PointSoA& pts, const Sphere& sphere, double* d_out);
void point_box_distance(const PointSoA& pts, const HalfspaceBox& box, double* d_out);

// Distance of each point to the segment a--b (a == b degenerates to the
// point a).
void point_segment_distance(const PointSoA& pts, const Vec3& a, const Vec3& b, double* d_out);

}  // namespace nav3d::simd
