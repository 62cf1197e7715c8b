#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nav3d/controller.hpp"
#include "nav3d/sensor.hpp"
#include "nav3d/world.hpp"

namespace nav3d {

enum class Pipeline {
    Exact,   // membership tests from exact geometry
    Sensed,  // membership tests from simulated depth scans
};

struct SimConfig {
    double dt_max = 1e-3;            // s
    double event_tolerance = 1e-6;   // m; jump location refinement
    double convergence_radius = 1e-3;  // m; run ends when |x| drops below
    double t_max = 60.0;             // s
    Pipeline pipeline = Pipeline::Exact;
    SensorConfig sensor;             // used by the sensed pipeline
    int record_stride = 1;           // sample every k-th accepted step
    std::uint64_t seed = 0;          // sampling-based diagnostics only
};

struct TrajectorySample {
    double t = 0.0;
    int j = 0;
    HybridState xi;
    Vec3 u;
    double gap = 0.0;       // distance to the obstacle union minus r_a
    int nearest_index = -1;
};

struct JumpRecord {
    double t = 0.0;
    int j = 0;  // jump counter before the jump
    JumpKind kind = JumpKind::L0;
    HybridState pre;
    HybridState post;
};

struct Outcome {
    enum class Kind { Converged, MaxTimeExceeded, Fault };
    Kind kind = Kind::MaxTimeExceeded;
    double t_final = 0.0;
    std::string message;
};

// Hybrid arc over (t, j) with per-sample diagnostics.
struct HybridTrajectory {
    std::vector<TrajectorySample> samples;
    std::vector<JumpRecord> jumps;
    Outcome outcome;
    std::vector<std::string> warnings;
};

// One explicit RK4 step of the closed-loop flow: x integrates the control
// field, s advances with time, (h, a, m) stay constant.
HybridState flow_step(const HybridState& xi, const World& world, const ControllerParams& params,
                      double dt);

// If xi_next entered the jump set of its mode, bisects the step between
// xi_prev and xi_next (the step length is recovered from the timer state)
// and returns the earliest state inside the jump set, located within
// event_tolerance along the path. Returns nullopt when no jump occurred.
std::optional<HybridState> detect_jump(const HybridState& xi_prev, const HybridState& xi_next,
                                        const World& world, const ControllerParams& params,
                                        double event_tolerance = 1e-6);

// Integrates the closed-loop hybrid system from xi0 until convergence,
// timeout or fault. Jumps are taken with priority whenever the state is in
// the jump set of its mode.
HybridTrajectory run(const World& world, const ControllerParams& params, const SimConfig& sim,
                     const HybridState& xi0);

struct AuditOptions {
    double event_tolerance = 1e-6;
    double convergence_radius = 1e-3;
    double progress_tolerance = 1e-6;   // slack on the epsilon decrement
    double plane_tolerance = 1e-4;      // bound on |a.(x-h)| during avoidance
    double monotone_tolerance = 1e-12;  // slack on |x| descent in mode 0
};

struct AuditReport {
    bool converged = false;
    double t_final = 0.0;
    int jump_count = 0;
    double min_gap = 0.0;               // over all samples
    double max_plane_residual = 0.0;    // |a.(x-h)| over avoidance samples
    double min_avoidance_gap = 0.0;     // gap range while avoiding
    double max_avoidance_gap = 0.0;
    std::vector<double> hit_norms;      // |h| at each L0 jump
    double min_hit_decrement = 0.0;     // min |h_k| - |h_{k+1}|; +inf if < 2 hits
    bool safety_ok = false;
    bool plane_ok = false;
    bool band_ok = false;               // avoidance samples stay in [0, gamma]
    bool alternation_ok = false;        // L0/L1 alternate after at most one leading L1
    bool progress_ok = false;
    bool m0_monotone_ok = false;
    std::vector<std::string> warnings;

    bool passed() const {
        return converged && safety_ok && plane_ok && band_ok && alternation_ok && progress_ok &&
               m0_monotone_ok;
    }
};

// Post-run invariant checks computed purely from the recorded trajectory.
AuditReport audit(const HybridTrajectory& traj, const World& world,
                  const ControllerParams& params, const AuditOptions& options = {});

}  // namespace nav3d
