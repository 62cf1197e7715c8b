#include "nav3d/runner.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace nav3d {

AuditOptions audit_options_for(const Scenario& sc) {
    AuditOptions opts;
    opts.event_tolerance = sc.sim.event_tolerance;
    opts.convergence_radius = sc.sim.convergence_radius;
    return opts;
}

std::vector<RunResult> run_scenario(const Scenario& sc) {
    const std::size_t n = sc.initial_states.size();
    std::vector<RunResult> results(n);
    const AuditOptions opts = audit_options_for(sc);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        while (true) {
            const std::size_t k = next.fetch_add(1);
            if (k >= n) return;
            try {
                results[k].traj = run(sc.world, sc.params, sc.sim, sc.initial_states[k]);
                results[k].audit = audit(results[k].traj, sc.world, sc.params, opts);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    const std::size_t workers =
        std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    return results;
}

}  // namespace nav3d
