// Benchmark of the OpenMP kernels against their serial reference: gauge
// margins over a path batch, metric pairs, tube-selection derivative scans,
// and the control-tree enumeration. Prints one table row per kernel with
// serial / parallel wall times and the speedup, and fails (exit 1) if any
// kernel disagrees bitwise with its reference.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "pathhj/ci_calculus.hpp"
#include "pathhj/delay_control.hpp"
#include "pathhj/gauge.hpp"
#include "pathhj/metrics.hpp"
#include "pathhj/parallel.hpp"
#include "pathhj/rng.hpp"

using namespace pathhj;

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

SampledPath random_path(const GridSpec& g, int t_index, double amplitude, Rng& rng) {
    std::vector<double> vals(static_cast<size_t>(g.nodes_at(t_index)) * g.n);
    std::vector<double> cur(g.n);
    const double amp = amplitude / std::sqrt(static_cast<double>(g.n));
    for (int i = 0; i < g.n; ++i) cur[i] = rng.uniform(-amp, amp);
    for (int k = 0; k < g.nodes_at(t_index); ++k)
        for (int i = 0; i < g.n; ++i) {
            cur[i] = std::clamp(cur[i] + rng.uniform(-amp, amp) * 8.0 * g.dt, -amp, amp);
            vals[static_cast<size_t>(k) * g.n + i] = cur[i];
        }
    return SampledPath::from_values(g, t_index, std::move(vals));
}

struct Row {
    std::string name;
    double serial_ms = 0.0;
    double parallel_ms = 0.0;
    bool bitwise = false;
};

template <typename Kernel>
Row bench(const std::string& name, size_t count, Kernel&& kernel) {
    Row row;
    row.name = name;
    std::vector<double> ref, par;
    double t0 = now_ms();
    serial_fill(ref, count, kernel);
    row.serial_ms = now_ms() - t0;
    t0 = now_ms();
    parallel_fill(par, count, kernel);
    row.parallel_ms = now_ms() - t0;
    row.bitwise = ref.size() == par.size();
    for (size_t i = 0; row.bitwise && i < count; ++i) row.bitwise = ref[i] == par[i];
    return row;
}

}  // namespace

int main() {
    const GridSpec g = GridSpec::make(0.5, 1.0, 1.0 / 64, 3);
    std::vector<Row> rows;

    rows.push_back(bench("gauge_margins_10k", 10000, [&](size_t i) {
        Rng rng = Rng::derived(5, 1, i);
        const PathPoint p = random_path(g, rng.uniform_int(0, g.steps_T), 1.5, rng);
        const auto m = smooth_norm2_bounds_margin(p);
        return m.lower + m.upper;
    }));

    rows.push_back(bench("metric_pairs_10k", 10000, [&](size_t i) {
        Rng rng = Rng::derived(5, 2, i);
        const PathPoint p = random_path(g, rng.uniform_int(0, g.steps_T), 1.5, rng);
        const PathPoint q = random_path(g, rng.uniform_int(0, g.steps_T), 1.5, rng);
        return (1.0 + g.T + g.h) * rho_inf(p, q) - rho_1(p, q);
    }));

    const GridSpec g1 = GridSpec::make(0.5, 1.0, 1.0 / 256, 1);
    const Functional absf{[](const PathPoint& p) { return std::abs(p.current()[0]); },
                          kContinuous | kLocallyLipschitz, "abs"};
    rows.push_back(bench("derivative_scans_64", 64, [&](size_t i) {
        Rng rng = Rng::derived(5, 3, i);
        const PathPoint p = random_path(g1, g1.steps_T / 3, 1.0, rng);
        return dir_deriv_multi(absf, p, DirectionSet::ball(1, 0.8), 24, 17 + i)
            .estimate;
    }));

    const GridSpec gc = GridSpec::make(0.2, 1.0, 1.0 / 10, 1);
    const DelayControlProblem prob =
        make_integrator_problem(gc, {{-1.0}, {0.0}, {1.0}});
    rows.push_back(bench("value_trees_32", 32, [&](size_t i) {
        Rng rng = Rng::derived(5, 4, i);
        const double x0[1] = {rng.uniform(-1.0, 1.0)};
        const PathPoint p = SampledPath::constant(gc, 0, x0);
        return value_exhaustive(prob, p, 1LL << 22).value;
    }));

    std::printf("%-22s %12s %12s %9s %8s\n", "kernel", "serial (ms)",
                "openmp (ms)", "speedup", "bitwise");
    bool all_ok = true;
    for (const auto& r : rows) {
        std::printf("%-22s %12.1f %12.1f %8.2fx %8s\n", r.name.c_str(), r.serial_ms,
                    r.parallel_ms, r.serial_ms / std::max(r.parallel_ms, 1e-9),
                    r.bitwise ? "yes" : "NO");
        all_ok = all_ok && r.bitwise;
    }
    std::printf("workers: %d\n", worker_count());
    return all_ok ? 0 : 1;
}
