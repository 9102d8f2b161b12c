#include "pathhj/hj_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pathhj/metrics.hpp"
#include "pathhj/rng.hpp"

namespace pathhj {

namespace {

double vnorm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

SampledPath random_history(const GridSpec& g, int t_index, double amplitude, Rng& rng) {
    std::vector<double> vals(static_cast<size_t>(g.nodes_at(t_index)) * g.n);
    std::vector<double> cur(g.n);
    for (int i = 0; i < g.n; ++i) cur[i] = rng.uniform(-amplitude, amplitude);
    for (int k = 0; k < g.nodes_at(t_index); ++k) {
        for (int i = 0; i < g.n; ++i) {
            cur[i] += rng.uniform(-1.0, 1.0) * amplitude * 4.0 * g.dt;
            vals[static_cast<size_t>(k) * g.n + i] = cur[i];
        }
    }
    return SampledPath::from_values(g, t_index, std::move(vals));
}

}  // namespace

HamiltonianReport validate_hamiltonian(const HamiltonianSpec& H, const GridSpec& grid,
                                       int budget, uint64_t seed) {
    HamiltonianReport rep;
    rep.samples = budget;
    for (int j = 0; j < budget; ++j) {
        Rng rng = Rng::derived(seed, 10, j);
        const int t_index = rng.uniform_int(0, grid.steps_T);
        const PathPoint p = random_history(grid, t_index, rng.uniform(0.1, 2.0), rng);
        std::vector<double> s(grid.n), r(grid.n);
        for (int i = 0; i < grid.n; ++i) {
            s[i] = rng.uniform(-3.0, 3.0);
            r[i] = rng.uniform(-3.0, 3.0);
        }
        std::vector<double> ds(grid.n);
        for (int i = 0; i < grid.n; ++i) ds[i] = s[i] - r[i];
        const double lhs = std::abs(H(p, s) - H(p, r));
        const double rhs = H.c_H * (1.0 + sup_norm(p)) * vnorm(ds);
        rep.worst_lipschitz_violation =
            std::max(rep.worst_lipschitz_violation, lhs - rhs);
    }
    // continuity scatter at a fixed s
    const int rows = std::min(budget, 64);
    std::vector<double> s_fixed(grid.n, 0.5);
    for (int j = 0; j < rows; ++j) {
        Rng rng = Rng::derived(seed, 11, j);
        const int t_index = rng.uniform_int(0, grid.steps_T);
        const PathPoint p = random_history(grid, t_index, 1.0, rng);
        PathPoint q = random_history(grid, t_index, 1.0, rng);
        rep.modulus.push_back({rho_inf(p, q), std::abs(H(p, s_fixed) - H(q, s_fixed))});
    }
    return rep;
}

double char_ball_radius(const PathPoint& p, double c_H) {
    return c_H * (1.0 + sup_norm(p));
}

std::vector<SampledPath> sample_characteristics(const PathPoint& p, double c_H,
                                                int count, uint64_t seed) {
    if (count <= 0) throw std::invalid_argument("sample_characteristics: count must be > 0");
    if (p.t_index() >= p.grid().steps_T)
        throw std::invalid_argument("sample_characteristics: requires t < T");
    const GridSpec& g = p.grid();
    const int n = g.n;
    const int steps = g.steps_T - p.t_index();
    std::vector<SampledPath> out;
    out.reserve(count);

    // derivative selection per step, radius from the left node's history
    auto build = [&](auto&& pick) {
        std::vector<double> derivs(static_cast<size_t>(steps) * n);
        std::vector<double> state(p.raw().begin(), p.raw().end());
        double running_sup2 = 0.0;
        for (size_t k = 0; k < state.size() / n; ++k) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += state[k * n + i] * state[k * n + i];
            running_sup2 = std::max(running_sup2, s);
        }
        for (int st = 0; st < steps; ++st) {
            const double radius = c_H * (1.0 + std::sqrt(running_sup2));
            std::vector<double> d = pick(st, radius);
            const double dn = vnorm(d);
            if (dn > radius && dn > 0.0)
                for (double& x : d) x *= radius / dn;  // clip to the local ball
            const size_t base = state.size();
            state.resize(base + n);
            double s2 = 0.0;
            for (int i = 0; i < n; ++i) {
                state[base + i] = state[base - n + i] + g.dt * d[i];
                s2 += state[base + i] * state[base + i];
                derivs[static_cast<size_t>(st) * n + i] = d[i];
            }
            running_sup2 = std::max(running_sup2, s2);
        }
        out.push_back(make_extension(p, derivs));
    };

    // constant extension first
    build([&](int, double) { return std::vector<double>(n, 0.0); });
    // straight lines at the initial radius (clipped per step if they leave
    // the local ball)
    const double r0 = char_ball_radius(p, c_H);
    int produced = 1;
    for (int i = 0; i < n && produced < count; ++i) {
        for (double sign : {1.0, -1.0}) {
            if (produced >= count) break;
            std::vector<double> l(n, 0.0);
            l[i] = sign * r0;
            build([&](int, double) { return l; });
            ++produced;
        }
    }
    // random per-step selections
    for (int j = 0; produced < count; ++j, ++produced) {
        build([&, j](int st, double radius) {
            Rng rng = Rng::derived(seed, 20 + static_cast<uint64_t>(j), st);
            return rng.in_ball(n, radius);
        });
    }
    if (static_cast<int>(out.size()) > count) out.resize(count);
    return out;
}

}  // namespace pathhj
