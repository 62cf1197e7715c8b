#include "nav3d/sensor.hpp"

#include <cmath>
#include <limits>

#include "nav3d/errors.hpp"
#include "nav3d/simd/kernels.hpp"

namespace nav3d {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void cast_shape(const Vec3& origin, const simd::RaySoA& rays, const World& world, int index,
                double* t_shape) {
    if (index == 0) {
        simd::ray_box_exit(origin, rays, *world.workspace, t_shape);
        return;
    }
    const ConvexShape& shape = world.obstacle(index);
    if (const auto* s = std::get_if<Sphere>(&shape)) {
        simd::ray_sphere(origin, rays, *s, t_shape);
    } else if (const auto* b = std::get_if<HalfspaceBox>(&shape)) {
        simd::ray_box(origin, rays, *b, t_shape);
    } else {
        const HullMesh& mesh = std::get<ConvexPolytope>(shape).mesh();
        simd::ray_planes(origin, rays, mesh.planes.data(), mesh.planes.size(), t_shape);
    }
}

}  // namespace

Scanner::Scanner(const SensorConfig& cfg) : cfg_(cfg) {
    if (cfg.angular_resolution < 64)
        throw ScenarioError("sensor angular_resolution must be at least 64");
    if (!(cfg.sensing_radius > 0.0)) throw ScenarioError("sensing radius must be positive");

    const int n = cfg.angular_resolution;
    dx_.resize(n);
    dy_.resize(n);
    dz_.resize(n);
    const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < n; ++k) {
        const double z = 1.0 - (2.0 * k + 1.0) / n;
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden_angle * k;
        dx_[k] = rho * std::cos(phi);
        dy_[k] = rho * std::sin(phi);
        dz_[k] = z;
    }
}

BoundaryCloud Scanner::scan(const Vec3& x, const World& world) const {
    BoundaryCloud cloud;
    cloud.robot_center = x;

    const std::size_t n = dx_.size();
    const simd::RaySoA rays{dx_.data(), dy_.data(), dz_.data(), n};

    std::vector<double> t_best(n, kInf);
    std::vector<int32_t> idx_best(n, -1);
    std::vector<double> t_shape(n);

    const int first = world.bounded() ? 0 : 1;
    for (int i = first; i <= world.obstacle_count(); ++i) {
        cast_shape(x, rays, world, i, t_shape.data());
        for (std::size_t k = 0; k < n; ++k) {
            if (t_shape[k] < t_best[k]) {
                t_best[k] = t_shape[k];
                idx_best[k] = static_cast<int32_t>(i);
            }
        }
    }

    for (std::size_t k = 0; k < n; ++k) {
        if (t_best[k] <= cfg_.sensing_radius)
            cloud.push(x + t_best[k] * Vec3{dx_[k], dy_[k], dz_[k]}, idx_best[k]);
    }
    return cloud;
}

BoundaryCloud scan(const Vec3& x, const World& world, const SensorConfig& cfg) {
    return Scanner(cfg).scan(x, world);
}

double sensed_gap(const BoundaryCloud& cloud) {
    if (cloud.empty()) return kInf;
    std::vector<double> d(cloud.size());
    const simd::PointSoA pts{cloud.px.data(), cloud.py.data(), cloud.pz.data(), cloud.size()};
    simd::point_segment_distance(pts, cloud.robot_center, cloud.robot_center, d.data());
    double best = kInf;
    for (double v : d) best = std::min(best, v);
    return best;
}

BoundaryCloud closest_obstacle_boundary(const BoundaryCloud& cloud) {
    if (cloud.empty()) throw EmptyCloud{};
    std::vector<double> d(cloud.size());
    const simd::PointSoA pts{cloud.px.data(), cloud.py.data(), cloud.pz.data(), cloud.size()};
    simd::point_segment_distance(pts, cloud.robot_center, cloud.robot_center, d.data());

    double best = kInf;
    int32_t best_idx = -1;
    for (std::size_t k = 0; k < cloud.size(); ++k) {
        if (d[k] < best || (d[k] == best && cloud.obstacle[k] < best_idx)) {
            best = d[k];
            best_idx = cloud.obstacle[k];
        }
    }

    BoundaryCloud subset;
    subset.robot_center = cloud.robot_center;
    for (std::size_t k = 0; k < cloud.size(); ++k)
        if (cloud.obstacle[k] == best_idx) subset.push(cloud.point(k), best_idx);
    return subset;
}

bool sensed_landing_test(const BoundaryCloud& subset, const Vec3& x, double r_a) {
    if (subset.empty()) return false;
    std::vector<double> d(subset.size());
    const simd::PointSoA pts{subset.px.data(), subset.py.data(), subset.pz.data(), subset.size()};
    simd::point_segment_distance(pts, x, Vec3{}, d.data());
    for (double v : d)
        if (v < r_a) return true;
    return false;
}

}  // namespace nav3d
