#include "kernels_detail.hpp"

namespace nav3d::simd::detail {

namespace {

void ray_sphere_scalar(const Vec3& origin, const RaySoA& rays, const Sphere& sphere,
                       double* t_out) {
    const double mx = sphere.center.x - origin.x;
    const double my = sphere.center.y - origin.y;
    const double mz = sphere.center.z - origin.z;
    const double c2 = ((mx * mx + my * my) + mz * mz) - sphere.radius * sphere.radius;
    for (std::size_t i = 0; i < rays.n; ++i)
        t_out[i] = ray_sphere_one(rays.dx[i], rays.dy[i], rays.dz[i], mx, my, mz, c2);
}

void ray_box_scalar(const Vec3& origin, const RaySoA& rays, const HalfspaceBox& box,
                    double* t_out) {
    for (std::size_t i = 0; i < rays.n; ++i)
        t_out[i] = ray_box_one(origin, rays.dx[i], rays.dy[i], rays.dz[i], box);
}

void ray_box_exit_scalar(const Vec3& origin, const RaySoA& rays, const HalfspaceBox& box,
                         double* t_out) {
    for (std::size_t i = 0; i < rays.n; ++i)
        t_out[i] = ray_box_exit_one(origin, rays.dx[i], rays.dy[i], rays.dz[i], box);
}

void ray_planes_scalar(const Vec3& origin, const RaySoA& rays, const FacePlane* planes,
                       std::size_t nplanes, double* t_out) {
    for (std::size_t i = 0; i < rays.n; ++i)
        t_out[i] = ray_planes_one(origin, rays.dx[i], rays.dy[i], rays.dz[i], planes, nplanes);
}

void point_sphere_distance_scalar(const PointSoA& pts, const Sphere& sphere, double* d_out) {
    for (std::size_t i = 0; i < pts.n; ++i)
        d_out[i] = point_sphere_distance_one(pts.px[i], pts.py[i], pts.pz[i], sphere);
}

void point_box_distance_scalar(const PointSoA& pts, const HalfspaceBox& box, double* d_out) {
    for (std::size_t i = 0; i < pts.n; ++i)
        d_out[i] = point_box_distance_one(pts.px[i], pts.py[i], pts.pz[i], box);
}

void point_segment_distance_scalar(const PointSoA& pts, const Vec3& a, const Vec3& b,
                                   double* d_out) {
    const double sx = b.x - a.x;
    const double sy = b.y - a.y;
    const double sz = b.z - a.z;
    const double len2 = (sx * sx + sy * sy) + sz * sz;
    const double inv_len2 = (len2 < 1e-30) ? 0.0 : 1.0 / len2;
    for (std::size_t i = 0; i < pts.n; ++i)
        d_out[i] = point_segment_distance_one(pts.px[i], pts.py[i], pts.pz[i], a, sx, sy, sz,
                                              inv_len2);
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{
        ray_sphere_scalar,          ray_box_scalar,
        ray_box_exit_scalar,        ray_planes_scalar,
        point_sphere_distance_scalar, point_box_distance_scalar,
        point_segment_distance_scalar,
    };
    return table;
}

}  // namespace nav3d::simd::detail
