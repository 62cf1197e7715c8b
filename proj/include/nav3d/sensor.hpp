#pragma once

#include <cstdint>
#include <vector>

#include "nav3d/world.hpp"

namespace nav3d {

struct SensorConfig {
    double sensing_radius = 1.0;    // R_s
    int angular_resolution = 4096;  // number of rays per scan
};

// Boundary points visible from the robot center, labeled with the obstacle
// they belong to (0 = workspace boundary). Stored as structure-of-arrays so
// the batch kernels can consume them directly.
struct BoundaryCloud {
    Vec3 robot_center;
    std::vector<double> px, py, pz;
    std::vector<int32_t> obstacle;

    std::size_t size() const { return px.size(); }
    bool empty() const { return px.empty(); }
    Vec3 point(std::size_t i) const { return {px[i], py[i], pz[i]}; }
    int index(std::size_t i) const { return obstacle[i]; }
    void push(const Vec3& p, int32_t idx) {
        px.push_back(p.x);
        py.push_back(p.y);
        pz.push_back(p.z);
        obstacle.push_back(idx);
    }
};

// Ideal depth sensor: casts a fixed, deterministic set of directions
// (Fibonacci sphere) and keeps the first obstacle-boundary hit within the
// sensing radius. Directions are built once per configuration.
class Scanner {
public:
    explicit Scanner(const SensorConfig& cfg);

    const SensorConfig& config() const { return cfg_; }
    BoundaryCloud scan(const Vec3& x, const World& world) const;

private:
    SensorConfig cfg_;
    std::vector<double> dx_, dy_, dz_;
};

// One-shot scan with a throwaway direction table.
BoundaryCloud scan(const Vec3& x, const World& world, const SensorConfig& cfg);

// Points of the cloud that belong to the closest sensed obstacle (ties to
// the lowest index). Throws EmptyCloud on an empty input.
BoundaryCloud closest_obstacle_boundary(const BoundaryCloud& cloud);

// Smallest distance from the robot center to a cloud point; +inf when the
// cloud is empty.
double sensed_gap(const BoundaryCloud& cloud);

// True iff some point of `subset` lies within r_a of the straight segment
// from x to the target: the sensed counterpart of the landing test.
bool sensed_landing_test(const BoundaryCloud& subset, const Vec3& x, double r_a);

}  // namespace nav3d
