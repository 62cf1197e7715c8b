#include <atomic>

#include "kernels_detail.hpp"
#include "nav3d/simd/kernels.hpp"

namespace nav3d::simd {

namespace {

bool detect_avx2() {
#if (defined(__x86_64__) || defined(_M_X64)) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

std::atomic<const detail::KernelTable*>& table_slot() {
    static std::atomic<const detail::KernelTable*> slot{nullptr};
    return slot;
}

const detail::KernelTable& table() {
    const detail::KernelTable* t = table_slot().load(std::memory_order_acquire);
    if (!t) {
#if defined(__x86_64__) || defined(_M_X64)
        t = detect_avx2() ? &detail::avx2_table() : &detail::scalar_table();
#else
        t = &detail::scalar_table();
#endif
        table_slot().store(t, std::memory_order_release);
    }
    return *t;
}

}  // namespace

bool avx2_available() { return detect_avx2(); }

Impl active_impl() {
#if defined(__x86_64__) || defined(_M_X64)
    return &table() == &detail::avx2_table() ? Impl::Avx2 : Impl::Scalar;
#else
    (void)table();
    return Impl::Scalar;
#endif
}

bool set_impl(Impl impl) {
    if (impl == Impl::Scalar) {
        table_slot().store(&detail::scalar_table(), std::memory_order_release);
        return true;
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (detect_avx2()) {
        table_slot().store(&detail::avx2_table(), std::memory_order_release);
        return true;
    }
#endif
    return false;
}

void ray_sphere(const Vec3& origin, const RaySoA& rays, const Sphere& sphere, double* t_out) {
    table().ray_sphere(origin, rays, sphere, t_out);
}

void ray_box(const Vec3& origin, const RaySoA& rays, const HalfspaceBox& box, double* t_out) {
    table().ray_box(origin, rays, box, t_out);
}

void ray_box_exit(const Vec3& origin, const RaySoA& rays, const HalfspaceBox& box,
                  double* t_out) {
    table().ray_box_exit(origin, rays, box, t_out);
}

void ray_planes(const Vec3& origin, const RaySoA& rays, const FacePlane* planes,
                std::size_t nplanes, double* t_out) {
    table().ray_planes(origin, rays, planes, nplanes, t_out);
}

void point_sphere_distance(const PointSoA& pts, const Sphere& sphere, double* d_out) {
    table().point_sphere_distance(pts, sphere, d_out);
}

void point_box_distance(const PointSoA& pts, const HalfspaceBox& box, double* d_out) {
    table().point_box_distance(pts, box, d_out);
}

void point_segment_distance(const PointSoA& pts, const Vec3& a, const Vec3& b, double* d_out) {
    table().point_segment_distance(pts, a, b, d_out);
}

}  // namespace nav3d::simd
