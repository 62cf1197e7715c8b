#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nav3d/runner.hpp"
#include "nav3d/svg.hpp"
#include "nav3d/trajectory_io.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using namespace nav3d;

json json_number(double v) {
    if (std::isfinite(v)) return v;
    return v > 0 ? "inf" : "-inf";
}

const char* outcome_name(Outcome::Kind kind) {
    switch (kind) {
        case Outcome::Kind::Converged: return "converged";
        case Outcome::Kind::MaxTimeExceeded: return "max_time_exceeded";
        default: return "fault";
    }
}

json audit_to_json(const AuditReport& report) {
    json checks;
    checks["converged"] = report.converged;
    checks["safety_ok"] = report.safety_ok;
    checks["plane_ok"] = report.plane_ok;
    checks["band_ok"] = report.band_ok;
    checks["alternation_ok"] = report.alternation_ok;
    checks["progress_ok"] = report.progress_ok;
    checks["m0_monotone_ok"] = report.m0_monotone_ok;

    json out;
    out["t_final"] = json_number(report.t_final);
    out["jump_count"] = report.jump_count;
    out["min_gap"] = json_number(report.min_gap);
    out["max_plane_residual"] = json_number(report.max_plane_residual);
    out["min_avoidance_gap"] = json_number(report.min_avoidance_gap);
    out["max_avoidance_gap"] = json_number(report.max_avoidance_gap);
    out["hit_norms"] = report.hit_norms;
    out["min_hit_decrement"] = json_number(report.min_hit_decrement);
    out["checks"] = checks;
    out["passed"] = report.passed();
    out["warnings"] = report.warnings;
    return out;
}

void print_feasibility(const FeasibilityReport& report) {
    std::cout << "min pair separation: " << report.min_pair_separation << "\n";
    std::cout << "d(0, obstacle union) - r: " << report.d0 << "\n";
    std::cout << "r_bar_s: " << report.r_bar_s << "\n";
    for (const std::string& v : report.violations) std::cout << "violation: " << v << "\n";
    for (const std::string& w : report.warnings) std::cout << "warning: " << w << "\n";
    std::cout << (report.ok ? "feasible" : "INFEASIBLE") << "\n";
}

int cmd_validate(const std::string& scenario_path) {
    const Scenario sc = Scenario::load(scenario_path);
    const FeasibilityReport report = sc.validate();
    print_feasibility(report);
    return report.ok ? 0 : 1;
}

struct RunFlags {
    std::string pipeline;
    std::string out_dir = "out";
    double dt = 0.0;
    double tmax = 0.0;
    double convergence_radius = 0.0;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

int cmd_run(const std::string& scenario_path, const RunFlags& flags) {
    Scenario sc = Scenario::load(scenario_path);
    if (flags.pipeline == "exact") sc.sim.pipeline = Pipeline::Exact;
    if (flags.pipeline == "sensed") sc.sim.pipeline = Pipeline::Sensed;
    if (flags.dt > 0.0) sc.sim.dt_max = flags.dt;
    if (flags.tmax > 0.0) sc.sim.t_max = flags.tmax;
    if (flags.convergence_radius > 0.0) sc.sim.convergence_radius = flags.convergence_radius;
    if (flags.seed_set) sc.sim.seed = flags.seed;

    const FeasibilityReport feas = sc.validate();
    if (!feas.ok) {
        print_feasibility(feas);
        return 2;
    }

    const std::vector<RunResult> results = run_scenario(sc);

    fs::create_directories(flags.out_dir);
    std::vector<const HybridTrajectory*> trajs;
    json runs = json::array();
    bool all_converged = true;
    for (std::size_t k = 0; k < results.size(); ++k) {
        const fs::path csv = fs::path(flags.out_dir) / ("traj_" + std::to_string(k) + ".csv");
        write_trajectory_csv(csv.string(), results[k].traj);
        trajs.push_back(&results[k].traj);

        json entry = audit_to_json(results[k].audit);
        entry["index"] = k;
        entry["outcome"] = outcome_name(results[k].traj.outcome.kind);
        if (!results[k].traj.outcome.message.empty())
            entry["message"] = results[k].traj.outcome.message;
        entry["trajectory"] = csv.string();
        runs.push_back(entry);

        const bool converged = results[k].traj.outcome.kind == Outcome::Kind::Converged;
        all_converged = all_converged && converged;
        std::cout << "run " << k << ": " << outcome_name(results[k].traj.outcome.kind)
                  << " t=" << results[k].audit.t_final << " jumps=" << results[k].audit.jump_count
                  << " min_gap=" << results[k].audit.min_gap
                  << (results[k].audit.passed() ? " [ok]" : " [CHECK FAILED]") << "\n";
    }

    write_file_atomic((fs::path(flags.out_dir) / "distance.svg").string(),
                      distance_plot_svg(trajs, sc.params.r_a));
    write_file_atomic((fs::path(flags.out_dir) / "trajectories.svg").string(),
                      trajectory_plot_svg(sc.world, trajs));

    json report;
    report["scenario"] = sc.name;
    report["pipeline"] = sc.sim.pipeline == Pipeline::Sensed ? "sensed" : "exact";
    report["runs"] = runs;
    report["all_passed"] = all_converged;
    write_file_atomic((fs::path(flags.out_dir) / "audit.json").string(), report.dump(2) + "\n");

    std::cout << "artifacts written to " << flags.out_dir << "\n";
    return all_converged ? 0 : 1;
}

int cmd_audit(const std::string& csv_path, const std::string& scenario_path) {
    const Scenario sc = Scenario::load(scenario_path);
    const HybridTrajectory traj = read_trajectory_csv(csv_path);
    const AuditReport report = audit(traj, sc.world, sc.params, audit_options_for(sc));

    // Cross-check the stored gap column against the world geometry.
    double max_gap_error = 0.0;
    for (const TrajectorySample& s : traj.samples) {
        const double gap = nearest_obstacle(sc.world, s.xi.x).distance - sc.params.r_a;
        max_gap_error = std::max(max_gap_error, std::abs(gap - s.gap));
    }

    json out = audit_to_json(report);
    out["trajectory"] = csv_path;
    out["scenario"] = sc.name;
    out["max_gap_recompute_error"] = json_number(max_gap_error);
    out["gap_consistent"] = max_gap_error <= 1e-9;
    std::cout << out.dump(2) << "\n";
    return (report.passed() && max_gap_error <= 1e-9) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hybrid-feedback navigation simulator for 3D convex-obstacle worlds"};
    app.require_subcommand(1);

    std::string scenario_path;
    auto* validate_cmd = app.add_subcommand("validate", "check workspace and parameter feasibility");
    validate_cmd->add_option("scenario", scenario_path, "scenario JSON file")->required();

    RunFlags flags;
    std::string run_scenario_path;
    auto* run_cmd = app.add_subcommand("run", "simulate every initial state and write artifacts");
    run_cmd->add_option("scenario", run_scenario_path, "scenario JSON file")->required();
    run_cmd->add_option("--pipeline", flags.pipeline, "exact | sensed")
        ->check(CLI::IsMember({"exact", "sensed"}));
    run_cmd->add_option("--out", flags.out_dir, "output directory (default: out)");
    run_cmd->add_option("--dt", flags.dt, "integration step override [s]");
    run_cmd->add_option("--tmax", flags.tmax, "simulated time budget override [s]");
    run_cmd->add_option("--convergence-radius", flags.convergence_radius,
                        "termination radius override [m]");
    auto* seed_opt = run_cmd->add_option("--seed", flags.seed,
                                         "seed for sampling-based diagnostics");

    std::string audit_csv, audit_scenario;
    auto* audit_cmd = app.add_subcommand("audit", "re-check invariants on a stored trajectory");
    audit_cmd->add_option("trajectory", audit_csv, "trajectory CSV file")->required();
    audit_cmd->add_option("scenario", audit_scenario, "scenario JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate_cmd->parsed()) return cmd_validate(scenario_path);
        if (run_cmd->parsed()) {
            flags.seed_set = seed_opt->count() > 0;
            return cmd_run(run_scenario_path, flags);
        }
        if (audit_cmd->parsed()) return cmd_audit(audit_csv, audit_scenario);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 3;
    }
    return 0;
}
