#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "kernels_detail.hpp"

// AVX2 variants of the batch kernels, 4 double lanes wide. Arithmetic is
// ordered exactly as in kernels_detail.hpp (no FMA contraction), so lanes
// are bitwise equal to the scalar reference. Tails fall through to the
// per-element reference functions.
namespace nav3d::simd::detail {

namespace {

const __m256d kInfV = _mm256_set1_pd(kMiss);
const __m256d kZeroV = _mm256_setzero_pd();

void ray_sphere_avx2(const Vec3& origin, const RaySoA& rays, const Sphere& sphere,
                     double* t_out) {
    const double mx = sphere.center.x - origin.x;
    const double my = sphere.center.y - origin.y;
    const double mz = sphere.center.z - origin.z;
    const double c2 = ((mx * mx + my * my) + mz * mz) - sphere.radius * sphere.radius;

    const __m256d mxv = _mm256_set1_pd(mx), myv = _mm256_set1_pd(my), mzv = _mm256_set1_pd(mz);
    const __m256d c2v = _mm256_set1_pd(c2);
    std::size_t i = 0;
    for (; i + 4 <= rays.n; i += 4) {
        const __m256d dx = _mm256_loadu_pd(rays.dx + i);
        const __m256d dy = _mm256_loadu_pd(rays.dy + i);
        const __m256d dz = _mm256_loadu_pd(rays.dz + i);
        const __m256d b = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(dx, mxv), _mm256_mul_pd(dy, myv)),
            _mm256_mul_pd(dz, mzv));
        const __m256d disc = _mm256_sub_pd(_mm256_mul_pd(b, b), c2v);
        const __m256d t = _mm256_sub_pd(b, _mm256_sqrt_pd(disc));
        const __m256d ok = _mm256_and_pd(_mm256_cmp_pd(disc, kZeroV, _CMP_GE_OQ),
                                         _mm256_cmp_pd(t, kZeroV, _CMP_GE_OQ));
        _mm256_storeu_pd(t_out + i, _mm256_blendv_pd(kInfV, t, ok));
    }
    for (; i < rays.n; ++i)
        t_out[i] = ray_sphere_one(rays.dx[i], rays.dy[i], rays.dz[i], mx, my, mz, c2);
}

// Slab update for one axis; o/lo/hi are scalars, the direction varies by lane.
inline void slab_axis(double o, double lo, double hi, __m256d d, __m256d& tnear, __m256d& tfar) {
    const __m256d inv = _mm256_div_pd(_mm256_set1_pd(1.0), d);
    const __m256d t1 = _mm256_mul_pd(_mm256_set1_pd(lo - o), inv);
    const __m256d t2 = _mm256_mul_pd(_mm256_set1_pd(hi - o), inv);
    __m256d tn = _mm256_min_pd(t1, t2);
    __m256d tf = _mm256_max_pd(t1, t2);
    const __m256d zero_d = _mm256_cmp_pd(d, kZeroV, _CMP_EQ_OQ);
    const bool inside = (o >= lo) && (o <= hi);
    tn = _mm256_blendv_pd(tn, _mm256_set1_pd(inside ? -kMiss : kMiss), zero_d);
    tf = _mm256_blendv_pd(tf, _mm256_set1_pd(inside ? kMiss : -kMiss), zero_d);
    tnear = _mm256_max_pd(tn, tnear);
    tfar = _mm256_min_pd(tf, tfar);
}

inline void box_range(const Vec3& o, const HalfspaceBox& box, __m256d dx, __m256d dy, __m256d dz,
                      __m256d& tnear, __m256d& tfar) {
    tnear = _mm256_set1_pd(-kMiss);
    tfar = kInfV;
    slab_axis(o.x, box.lo.x, box.hi.x, dx, tnear, tfar);
    slab_axis(o.y, box.lo.y, box.hi.y, dy, tnear, tfar);
    slab_axis(o.z, box.lo.z, box.hi.z, dz, tnear, tfar);
}

void ray_box_avx2(const Vec3& origin, const RaySoA& rays, const HalfspaceBox& box,
                  double* t_out) {
    std::size_t i = 0;
    for (; i + 4 <= rays.n; i += 4) {
        __m256d tnear, tfar;
        box_range(origin, box, _mm256_loadu_pd(rays.dx + i), _mm256_loadu_pd(rays.dy + i),
                  _mm256_loadu_pd(rays.dz + i), tnear, tfar);
        const __m256d tenter = _mm256_max_pd(tnear, kZeroV);
        const __m256d ok = _mm256_cmp_pd(tenter, tfar, _CMP_LE_OQ);
        _mm256_storeu_pd(t_out + i, _mm256_blendv_pd(kInfV, tenter, ok));
    }
    for (; i < rays.n; ++i)
        t_out[i] = ray_box_one(origin, rays.dx[i], rays.dy[i], rays.dz[i], box);
}

void ray_box_exit_avx2(const Vec3& origin, const RaySoA& rays, const HalfspaceBox& box,
                       double* t_out) {
    std::size_t i = 0;
    for (; i + 4 <= rays.n; i += 4) {
        __m256d tnear, tfar;
        box_range(origin, box, _mm256_loadu_pd(rays.dx + i), _mm256_loadu_pd(rays.dy + i),
                  _mm256_loadu_pd(rays.dz + i), tnear, tfar);
        const __m256d ok = _mm256_cmp_pd(tfar, kZeroV, _CMP_GE_OQ);
        _mm256_storeu_pd(t_out + i, _mm256_blendv_pd(kInfV, tfar, ok));
    }
    for (; i < rays.n; ++i)
        t_out[i] = ray_box_exit_one(origin, rays.dx[i], rays.dy[i], rays.dz[i], box);
}

void ray_planes_avx2(const Vec3& origin, const RaySoA& rays, const FacePlane* planes,
                     std::size_t nplanes, double* t_out) {
    std::size_t i = 0;
    for (; i + 4 <= rays.n; i += 4) {
        const __m256d dx = _mm256_loadu_pd(rays.dx + i);
        const __m256d dy = _mm256_loadu_pd(rays.dy + i);
        const __m256d dz = _mm256_loadu_pd(rays.dz + i);
        __m256d tenter = _mm256_set1_pd(-kMiss);
        __m256d texit = kInfV;
        __m256d miss = kZeroV;  // all-false mask
        for (std::size_t f = 0; f < nplanes; ++f) {
            const Vec3& n = planes[f].normal;
            const double num =
                planes[f].offset - ((n.x * origin.x + n.y * origin.y) + n.z * origin.z);
            const __m256d denom = _mm256_add_pd(
                _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(n.x), dx),
                              _mm256_mul_pd(_mm256_set1_pd(n.y), dy)),
                _mm256_mul_pd(_mm256_set1_pd(n.z), dz));
            const __m256d q = _mm256_div_pd(_mm256_set1_pd(num), denom);
            const __m256d pos = _mm256_cmp_pd(denom, kZeroV, _CMP_GT_OQ);
            const __m256d neg = _mm256_cmp_pd(denom, kZeroV, _CMP_LT_OQ);
            texit = _mm256_blendv_pd(texit, _mm256_min_pd(q, texit), pos);
            tenter = _mm256_blendv_pd(tenter, _mm256_max_pd(q, tenter), neg);
            if (num < 0.0)
                miss = _mm256_or_pd(miss, _mm256_cmp_pd(denom, kZeroV, _CMP_EQ_OQ));
        }
        __m256d ok = _mm256_and_pd(_mm256_cmp_pd(tenter, kZeroV, _CMP_GE_OQ),
                                   _mm256_cmp_pd(tenter, texit, _CMP_LE_OQ));
        ok = _mm256_andnot_pd(miss, ok);
        _mm256_storeu_pd(t_out + i, _mm256_blendv_pd(kInfV, tenter, ok));
    }
    for (; i < rays.n; ++i)
        t_out[i] = ray_planes_one(origin, rays.dx[i], rays.dy[i], rays.dz[i], planes, nplanes);
}

void point_sphere_distance_avx2(const PointSoA& pts, const Sphere& sphere, double* d_out) {
    const __m256d cx = _mm256_set1_pd(sphere.center.x);
    const __m256d cy = _mm256_set1_pd(sphere.center.y);
    const __m256d cz = _mm256_set1_pd(sphere.center.z);
    const __m256d r = _mm256_set1_pd(sphere.radius);
    std::size_t i = 0;
    for (; i + 4 <= pts.n; i += 4) {
        const __m256d ex = _mm256_sub_pd(_mm256_loadu_pd(pts.px + i), cx);
        const __m256d ey = _mm256_sub_pd(_mm256_loadu_pd(pts.py + i), cy);
        const __m256d ez = _mm256_sub_pd(_mm256_loadu_pd(pts.pz + i), cz);
        const __m256d s = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(ex, ex), _mm256_mul_pd(ey, ey)), _mm256_mul_pd(ez, ez));
        const __m256d d = _mm256_sub_pd(_mm256_sqrt_pd(s), r);
        _mm256_storeu_pd(d_out + i, _mm256_max_pd(d, kZeroV));
    }
    for (; i < pts.n; ++i)
        d_out[i] = point_sphere_distance_one(pts.px[i], pts.py[i], pts.pz[i], sphere);
}

void point_box_distance_avx2(const PointSoA& pts, const HalfspaceBox& box, double* d_out) {
    auto axis = [](__m256d p, double lo, double hi) {
        const __m256d a = _mm256_sub_pd(_mm256_set1_pd(lo), p);
        const __m256d c = _mm256_sub_pd(p, _mm256_set1_pd(hi));
        return _mm256_max_pd(_mm256_max_pd(a, c), kZeroV);
    };
    std::size_t i = 0;
    for (; i + 4 <= pts.n; i += 4) {
        const __m256d ex = axis(_mm256_loadu_pd(pts.px + i), box.lo.x, box.hi.x);
        const __m256d ey = axis(_mm256_loadu_pd(pts.py + i), box.lo.y, box.hi.y);
        const __m256d ez = axis(_mm256_loadu_pd(pts.pz + i), box.lo.z, box.hi.z);
        const __m256d s = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(ex, ex), _mm256_mul_pd(ey, ey)), _mm256_mul_pd(ez, ez));
        _mm256_storeu_pd(d_out + i, _mm256_sqrt_pd(s));
    }
    for (; i < pts.n; ++i)
        d_out[i] = point_box_distance_one(pts.px[i], pts.py[i], pts.pz[i], box);
}

void point_segment_distance_avx2(const PointSoA& pts, const Vec3& a, const Vec3& b,
                                 double* d_out) {
    const double sx = b.x - a.x;
    const double sy = b.y - a.y;
    const double sz = b.z - a.z;
    const double len2 = (sx * sx + sy * sy) + sz * sz;
    const double inv_len2 = (len2 < 1e-30) ? 0.0 : 1.0 / len2;

    const __m256d sxv = _mm256_set1_pd(sx), syv = _mm256_set1_pd(sy), szv = _mm256_set1_pd(sz);
    const __m256d axv = _mm256_set1_pd(a.x), ayv = _mm256_set1_pd(a.y), azv = _mm256_set1_pd(a.z);
    const __m256d invv = _mm256_set1_pd(inv_len2);
    const __m256d onev = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + 4 <= pts.n; i += 4) {
        const __m256d px = _mm256_loadu_pd(pts.px + i);
        const __m256d py = _mm256_loadu_pd(pts.py + i);
        const __m256d pz = _mm256_loadu_pd(pts.pz + i);
        __m256d t = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(_mm256_sub_pd(px, axv), sxv),
                          _mm256_mul_pd(_mm256_sub_pd(py, ayv), syv)),
            _mm256_mul_pd(_mm256_sub_pd(pz, azv), szv));
        t = _mm256_mul_pd(t, invv);
        t = _mm256_max_pd(t, kZeroV);
        t = _mm256_min_pd(t, onev);
        const __m256d ex = _mm256_sub_pd(px, _mm256_add_pd(axv, _mm256_mul_pd(t, sxv)));
        const __m256d ey = _mm256_sub_pd(py, _mm256_add_pd(ayv, _mm256_mul_pd(t, syv)));
        const __m256d ez = _mm256_sub_pd(pz, _mm256_add_pd(azv, _mm256_mul_pd(t, szv)));
        const __m256d s = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(ex, ex), _mm256_mul_pd(ey, ey)), _mm256_mul_pd(ez, ez));
        _mm256_storeu_pd(d_out + i, _mm256_sqrt_pd(s));
    }
    for (; i < pts.n; ++i)
        d_out[i] = point_segment_distance_one(pts.px[i], pts.py[i], pts.pz[i], a, sx, sy, sz,
                                              inv_len2);
}

}  // namespace

const KernelTable& avx2_table() {
    static const KernelTable table{
        ray_sphere_avx2,          ray_box_avx2,
        ray_box_exit_avx2,        ray_planes_avx2,
        point_sphere_distance_avx2, point_box_distance_avx2,
        point_segment_distance_avx2,
    };
    return table;
}

}  // namespace nav3d::simd::detail

#endif  // x86_64
