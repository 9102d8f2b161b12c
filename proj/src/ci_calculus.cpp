#include "pathhj/ci_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pathhj/parallel.hpp"

namespace pathhj {

namespace {

double vnorm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

void require_interior(const PathPoint& p, const char* where) {
    if (p.t_index() >= p.grid().steps_T)
        throw std::invalid_argument(std::string(where) + ": requires t < T");
}

}  // namespace

std::vector<int> dyadic_offsets(const GridSpec& grid, int t_index) {
    const int remaining = grid.steps_T - t_index;
    if (remaining < 1) throw std::invalid_argument("dyadic_offsets: t = T");
    std::vector<int> out;
    for (int k = 4; k <= 12; ++k) {
        int steps = static_cast<int>(std::llround(std::ldexp(static_cast<double>(remaining), -k)));
        steps = std::clamp(steps, 1, remaining);
        if (out.empty() || out.back() != steps) out.push_back(steps);
    }
    return out;
}

QuotientEstimate quotient_trace(const Functional& phi, const PathPoint& p,
                                const SampledPath& ext, std::span<const int> offsets) {
    if (offsets.empty()) throw std::invalid_argument("quotient_trace: empty schedule");
    require_interior(p, "quotient_trace");
    require_same_grid(p.grid(), ext.grid(), "quotient_trace");
    const double base = phi(p);
    QuotientEstimate est;
    est.running_min = std::numeric_limits<double>::infinity();
    est.running_max = -std::numeric_limits<double>::infinity();
    for (int steps : offsets) {
        const double tau_off = steps * p.grid().dt;
        const double value = phi(restrict_to(ext, p.t_index() + steps));
        const double q = (value - base) / tau_off;
        est.offsets.push_back(tau_off);
        est.quotients.push_back(q);
        est.running_min = std::min(est.running_min, q);
        est.running_max = std::max(est.running_max, q);
    }
    // Tail extrapolation: fit q = a + b*tau through consecutive distinct
    // offsets and accept the limit when the last two extrapolants agree.
    std::vector<double> extr;
    for (size_t i = 0; i + 1 < est.offsets.size(); ++i) {
        const double ta = est.offsets[i], tb = est.offsets[i + 1];
        if (ta == tb) continue;
        extr.push_back((est.quotients[i + 1] * ta - est.quotients[i] * tb) / (ta - tb));
    }
    if (!extr.empty()) {
        est.refined = extr.back();
        if (extr.size() >= 2) {
            const double d = std::abs(extr.back() - extr[extr.size() - 2]);
            est.converged = d <= 1e-4 + 1e-3 * std::abs(extr.back());
        }
    } else {
        est.refined = est.quotients.back();
    }
    return est;
}

QuotientEstimate lower_right_derivative(const Functional& phi, const PathPoint& p,
                                        const SampledPath& ext,
                                        std::span<const int> offsets) {
    return quotient_trace(phi, p, ext, offsets);
}

QuotientEstimate upper_right_derivative(const Functional& phi, const PathPoint& p,
                                        const SampledPath& ext,
                                        std::span<const int> offsets) {
    return quotient_trace(phi, p, ext, offsets);
}

double dir_deriv_single(const Functional& phi, const PathPoint& p,
                        std::span<const double> l, std::span<const int> offsets) {
    return quotient_trace(phi, p, line_extension(p, l), offsets).lower_value();
}

double dir_deriv_single(const Functional& phi, const PathPoint& p,
                        std::span<const double> l) {
    const auto offsets = dyadic_offsets(p.grid(), p.t_index());
    return dir_deriv_single(phi, p, l, offsets);
}

DirectionSet DirectionSet::ball(int n, double r) {
    if (n < 1 || r < 0.0) throw std::invalid_argument("DirectionSet::ball");
    DirectionSet d;
    d.kind = Kind::kBall;
    d.dim = n;
    d.radius = r;
    return d;
}

DirectionSet DirectionSet::polytope(std::vector<std::vector<double>> verts) {
    if (verts.empty()) throw std::invalid_argument("DirectionSet::polytope: no vertices");
    DirectionSet d;
    d.kind = Kind::kPolytope;
    d.dim = static_cast<int>(verts.front().size());
    for (const auto& v : verts)
        if (static_cast<int>(v.size()) != d.dim)
            throw std::invalid_argument("DirectionSet::polytope: ragged vertices");
    d.vertices = std::move(verts);
    return d;
}

double DirectionSet::max_norm() const {
    if (kind == Kind::kBall) return radius;
    double best = 0.0;
    for (const auto& v : vertices) best = std::max(best, vnorm(v));
    return best;
}

std::vector<std::vector<double>> DirectionSet::extreme_points(double eps) const {
    std::vector<std::vector<double>> out;
    if (kind == Kind::kBall) {
        const double r = radius + eps;
        out.emplace_back(dim, 0.0);
        for (int i = 0; i < dim; ++i) {
            std::vector<double> v(dim, 0.0);
            v[i] = r;
            out.push_back(v);
            v[i] = -r;
            out.push_back(v);
        }
        if (dim >= 2) {
            // sign-diagonal extremes; enough to catch oblique minima in the
            // low dimensions the battery uses
            const double c = r / std::sqrt(static_cast<double>(dim));
            for (int mask = 0; mask < (1 << dim) && dim <= 4; ++mask) {
                std::vector<double> v(dim);
                for (int i = 0; i < dim; ++i) v[i] = (mask >> i & 1) ? c : -c;
                out.push_back(v);
            }
        }
        return out;
    }
    for (const auto& v : vertices) {
        out.push_back(v);
        if (eps > 0.0) {
            const double nv = vnorm(v);
            if (nv > 1e-15) {
                std::vector<double> w(v);
                for (int i = 0; i < dim; ++i) w[i] += eps * v[i] / nv;
                out.push_back(std::move(w));
            } else {
                for (int i = 0; i < dim; ++i) {
                    std::vector<double> w(v);
                    w[i] += eps;
                    out.push_back(w);
                    w[i] = v[i] - eps;
                    out.push_back(std::move(w));
                }
            }
        }
    }
    return out;
}

std::vector<double> DirectionSet::sample(double eps, Rng& rng) const {
    if (kind == Kind::kBall) return rng.in_ball(dim, radius + eps);
    // convex combination of vertices plus a point of the eps-ball
    std::vector<double> w(vertices.size());
    double s = 0.0;
    for (double& x : w) {
        x = -std::log(std::max(rng.uniform(), 1e-300));
        s += x;
    }
    std::vector<double> out(dim, 0.0);
    for (size_t k = 0; k < vertices.size(); ++k)
        for (int i = 0; i < dim; ++i) out[i] += w[k] / s * vertices[k][i];
    if (eps > 0.0) {
        auto bump = rng.in_ball(dim, eps);
        for (int i = 0; i < dim; ++i) out[i] += bump[i];
    }
    return out;
}

double DirectionSet::min_inner(std::span<const double> d, double eps) const {
    if (kind == Kind::kBall) return -(radius + eps) * vnorm(d);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& v : vertices) {
        double dot = 0.0;
        for (int i = 0; i < dim; ++i) dot += d[i] * v[i];
        best = std::min(best, dot);
    }
    return best - eps * vnorm(d);
}

namespace {

struct Candidate {
    std::vector<double> derivs;  // one vector per step of [t, T], flattened
    int level = 0;               // finest level whose enlargement admits it
};

// Selections within [L]^eps: extreme-point lines, random interior lines, and
// dyadic-segment selections. Segment candidates hold the derivative constant
// across the smallest quotient offsets, so their traces settle and the tail
// extrapolation stays meaningful; coarser segments explore the tube.
void add_level_candidates(std::vector<Candidate>& out, const DirectionSet& L,
                          double eps, int level, int steps, int n, int budget,
                          std::span<const int> offsets, uint64_t seed) {
    auto push_constant = [&](std::span<const double> l) {
        Candidate c;
        c.level = level;
        c.derivs.resize(static_cast<size_t>(steps) * n);
        for (int s = 0; s < steps; ++s)
            std::copy(l.begin(), l.end(), c.derivs.begin() + static_cast<size_t>(s) * n);
        out.push_back(std::move(c));
    };
    for (const auto& v : L.extreme_points(eps)) push_constant(v);
    const int random_lines = budget / 2;
    for (int j = 0; j < random_lines; ++j) {
        Rng rng = Rng::derived(seed, 1000 + static_cast<uint64_t>(level), j);
        push_constant(L.sample(eps, rng));
    }
    // segment boundaries: straight until the third-smallest offset, then a
    // fresh draw per dyadic block
    std::vector<int> bounds;
    const size_t keep_straight = offsets.size() >= 3 ? offsets.size() - 3 : 0;
    for (size_t j = keep_straight; j-- > 0;) bounds.push_back(offsets[j]);
    bounds.push_back(steps);
    for (int j = 0; j < budget - random_lines; ++j) {
        Rng rng = Rng::derived(seed, 2000 + static_cast<uint64_t>(level), j);
        Candidate c;
        c.level = level;
        c.derivs.resize(static_cast<size_t>(steps) * n);
        int from = 0;
        for (int upto : bounds) {
            const auto v = L.sample(eps, rng);
            for (int s = from; s < std::min(upto, steps); ++s)
                std::copy(v.begin(), v.end(),
                          c.derivs.begin() + static_cast<size_t>(s) * n);
            from = upto;
        }
        out.push_back(std::move(c));
    }
}

}  // namespace

DirectionalScan scan_directions(const Functional& phi, const PathPoint& p,
                                const DirectionSet& L, int budget, uint64_t seed) {
    if (budget <= 0) throw std::invalid_argument("scan_directions: budget must be > 0");
    require_interior(p, "scan_directions");
    const GridSpec& g = p.grid();
    if (L.dim != g.n) throw std::invalid_argument("scan_directions: direction dimension mismatch");
    const int steps = g.steps_T - p.t_index();
    const auto offsets = dyadic_offsets(g, p.t_index());
    const double span_t = g.index_time(g.steps_T) - p.t();

    const double scale = std::max(1.0, L.max_norm());
    std::vector<double> eps_levels;
    std::vector<double> windows;
    for (int k = 2; k <= 10; k += 2) {
        eps_levels.push_back(std::ldexp(scale, -k - 2));  // scale/16 .. scale/4096
        windows.push_back(std::max(std::ldexp(span_t, -k / 2 - 1), g.dt));
    }
    const int levels = static_cast<int>(eps_levels.size());
    const int per_level = std::max(4, budget / levels);

    std::vector<Candidate> candidates;
    for (int lev = 0; lev < levels; ++lev)
        add_level_candidates(candidates, L, eps_levels[lev], lev, steps, g.n, per_level,
                             offsets, seed);

    struct Eval {
        double lower;                 // liminf estimate along the candidate
        std::vector<double> window_min;  // min quotient within each level window
    };
    auto evaluate = [&](const std::vector<double>& derivs) {
        const SampledPath ext = make_extension(p, derivs);
        const QuotientEstimate tr = quotient_trace(phi, p, ext, offsets);
        Eval e;
        e.lower = tr.lower_value();
        e.window_min.assign(windows.size(), std::numeric_limits<double>::infinity());
        for (size_t j = 0; j < tr.offsets.size(); ++j)
            for (size_t w = 0; w < windows.size(); ++w)
                if (tr.offsets[j] <= windows[w] + 1e-15)
                    e.window_min[w] = std::min(e.window_min[w], tr.quotients[j]);
        return e;
    };
    std::vector<Eval> evals;
    parallel_fill(evals, candidates.size(),
                  [&](size_t idx) { return evaluate(candidates[idx].derivs); });

    // Candidates admissible at level lev are those generated at lev or at any
    // finer level (their selections live inside the smaller enlargement).
    DirectionalEstimate multi;
    DirectionalEstimate joint;
    multi.budget = joint.budget = static_cast<int>(candidates.size());
    multi.seed = joint.seed = seed;
    int best_idx = -1;
    for (int lev = 0; lev < levels; ++lev) {
        double m = std::numeric_limits<double>::infinity();
        double jm = std::numeric_limits<double>::infinity();
        int arg = -1;
        for (size_t idx = 0; idx < candidates.size(); ++idx) {
            if (candidates[idx].level < lev) continue;
            const Eval& e = evals[idx];
            if (e.lower < m ||
                (e.lower == m && arg >= 0 &&
                 std::lexicographical_compare(candidates[idx].derivs.begin(),
                                              candidates[idx].derivs.end(),
                                              candidates[arg].derivs.begin(),
                                              candidates[arg].derivs.end()))) {
                m = e.lower;
                arg = static_cast<int>(idx);
            }
            if (std::isfinite(e.window_min[lev])) jm = std::min(jm, e.window_min[lev]);
        }
        multi.levels.push_back(eps_levels[lev]);
        multi.level_estimates.push_back(m);
        joint.levels.push_back(windows[lev]);
        joint.level_estimates.push_back(std::min(jm, m));
        if (lev == levels - 1) best_idx = arg;
    }
    // Refinement of the best finest-level candidate. Two moves, both within
    // the finest enlargement: coordinate descent on the direction of a
    // straight selection (balls only; shrinking steps, clipped to the ball)
    // and dyadic-segment substitution with extreme selections.
    int fine_best = -1;
    for (size_t idx = 0; idx < candidates.size(); ++idx) {
        if (candidates[idx].level != levels - 1) continue;
        if (fine_best < 0 || evals[idx].lower < evals[fine_best].lower)
            fine_best = static_cast<int>(idx);
    }
    if (fine_best >= 0) {
        const double eps_fine = eps_levels.back();
        std::vector<double> derivs = candidates[fine_best].derivs;
        double best_lower = evals[fine_best].lower;
        std::vector<double> best_window = evals[fine_best].window_min;
        auto fold = [&](const std::vector<double>& trial) {
            const Eval e = evaluate(trial);
            if (e.lower < best_lower) {
                best_lower = e.lower;
                derivs = trial;
                for (size_t w = 0; w < windows.size(); ++w)
                    best_window[w] = std::min(best_window[w], e.window_min[w]);
                return true;
            }
            return false;
        };
        if (L.kind == DirectionSet::Kind::kBall && g.n > 1) {
            const double rad = L.radius + eps_fine;
            std::vector<double> dir(derivs.begin(), derivs.begin() + g.n);
            auto line_of = [&](const std::vector<double>& l) {
                std::vector<double> d(static_cast<size_t>(steps) * g.n);
                for (int s = 0; s < steps; ++s)
                    std::copy(l.begin(), l.end(), d.begin() + static_cast<size_t>(s) * g.n);
                return d;
            };
            fold(line_of(dir));
            for (double frac : {0.5, 0.125, 0.03125, 0.0078125}) {
                const double step = frac * rad;
                for (int pass = 0; pass < 3; ++pass) {
                    bool moved = false;
                    for (int i = 0; i < g.n; ++i)
                        for (double sgn : {1.0, -1.0}) {
                            std::vector<double> trial = dir;
                            trial[i] += sgn * step;
                            const double nv = vnorm(trial);
                            if (nv > rad)
                                for (double& x : trial) x *= rad / nv;
                            if (fold(line_of(trial))) {
                                dir = trial;
                                moved = true;
                            }
                        }
                    if (!moved) break;
                }
            }
        }
        // dyadic-segment substitution with extreme selections; segments use
        // the generation boundaries so the extrapolation tail stays straight
        const auto substitutions = L.extreme_points(eps_fine);
        std::vector<int> bounds{0};
        const size_t keep_straight = offsets.size() >= 3 ? offsets.size() - 3 : 0;
        for (size_t j = keep_straight; j-- > 0;)
            if (offsets[j] != bounds.back()) bounds.push_back(offsets[j]);
        if (bounds.back() != steps) bounds.push_back(steps);
        for (size_t seg = 0; seg + 1 < bounds.size(); ++seg) {
            for (const auto& sub : substitutions) {
                std::vector<double> trial = derivs;
                for (int s = bounds[seg]; s < std::min(bounds[seg + 1], steps); ++s)
                    std::copy(sub.begin(), sub.end(),
                              trial.begin() + static_cast<size_t>(s) * g.n);
                fold(trial);
            }
        }
        if (best_lower < multi.level_estimates.back()) {
            multi.level_estimates.back() = best_lower;
            best_idx = -2;
            multi.witness_derivs = derivs;
        }
        joint.level_estimates.back() =
            std::min({joint.level_estimates.back(), best_window.back(),
                      multi.level_estimates.back()});
    }
    multi.estimate = multi.level_estimates.back();
    joint.estimate = joint.level_estimates.back();
    if (best_idx >= 0) {
        multi.witness_derivs = candidates[best_idx].derivs;
        joint.witness_derivs = candidates[best_idx].derivs;
    } else if (best_idx == -2) {
        joint.witness_derivs = multi.witness_derivs;
    }
    return DirectionalScan{std::move(multi), std::move(joint)};
}

DirectionalEstimate dir_deriv_multi(const Functional& phi, const PathPoint& p,
                                    const DirectionSet& L, int budget, uint64_t seed) {
    return scan_directions(phi, p, L, budget, seed).multi;
}

DirectionalEstimate dir_deriv_d0(const Functional& phi, const PathPoint& p,
                                 const DirectionSet& L, int budget, uint64_t seed) {
    return scan_directions(phi, p, L, budget, seed).joint;
}

std::vector<std::vector<double>> default_l_grid(int n, double scale, uint64_t seed) {
    std::vector<std::vector<double>> grid;
    grid.emplace_back(n, 0.0);
    for (int i = 0; i < n; ++i) {
        std::vector<double> v(n, 0.0);
        v[i] = scale;
        grid.push_back(v);
        v[i] = -scale;
        grid.push_back(v);
    }
    for (int j = 0; j < 2 * n; ++j) {
        Rng rng = Rng::derived(seed, 3000, j);
        auto v = rng.unit_vector(n);
        for (double& x : v) x *= scale;
        grid.push_back(std::move(v));
    }
    const size_t base = grid.size();
    for (size_t k = 1; k < base; ++k) {
        std::vector<double> v = grid[k];
        for (double& x : v) x *= 0.5;
        grid.push_back(std::move(v));
    }
    return grid;
}

bool SubdiffApprox::contains(double p0, std::span<const double> p) const {
    return worst_slack(p0, p) <= tol;
}

double SubdiffApprox::worst_slack(double p0, std::span<const double> p) const {
    double worst = -std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < l_grid.size(); ++k) {
        double dot = 0.0;
        for (size_t i = 0; i < p.size(); ++i) dot += p[i] * l_grid[k][i];
        const double v = super ? bounds[k] - (p0 + dot) : (p0 + dot) - bounds[k];
        worst = std::max(worst, v);
    }
    return worst;
}

namespace {

SubdiffApprox approx_differential_impl(const Functional& phi, const PathPoint& p,
                                       std::span<const std::vector<double>> l_grid,
                                       double tol, bool super) {
    if (!phi.has(kLocallyLipschitz))
        throw std::invalid_argument(
            "approx differential: functional must be tagged locally Lipschitz");
    require_interior(p, "approx differential");
    const auto offsets = dyadic_offsets(p.grid(), p.t_index());
    SubdiffApprox out;
    out.super = super;
    out.tol = tol;
    out.l_grid.assign(l_grid.begin(), l_grid.end());
    std::vector<double> bounds;
    parallel_fill(bounds, out.l_grid.size(), [&](size_t k) {
        const auto tr = quotient_trace(phi, p, line_extension(p, out.l_grid[k]), offsets);
        return super ? tr.upper_value() : tr.lower_value();
    });
    out.bounds = std::move(bounds);
    return out;
}

}  // namespace

SubdiffApprox approx_subdifferential(const Functional& phi, const PathPoint& p,
                                     std::span<const std::vector<double>> l_grid,
                                     double tol) {
    return approx_differential_impl(phi, p, l_grid, tol, false);
}

SubdiffApprox approx_superdifferential(const Functional& phi, const PathPoint& p,
                                       std::span<const std::vector<double>> l_grid,
                                       double tol) {
    return approx_differential_impl(phi, p, l_grid, tol, true);
}

std::vector<std::pair<double, std::vector<double>>> gradient_candidates(
    const Functional& phi, const PathPoint& p, double scale) {
    const GridSpec& g = p.grid();
    const int n = g.n;
    const auto offsets = dyadic_offsets(g, p.t_index());
    std::vector<double> zero(n, 0.0);
    const double d0 = dir_deriv_single(phi, p, zero, offsets);
    std::vector<double> plus(n), minus(n);
    for (int i = 0; i < n; ++i) {
        std::vector<double> e(n, 0.0);
        e[i] = scale;
        const double fp = dir_deriv_single(phi, p, e, offsets);
        e[i] = -scale;
        const double fm = dir_deriv_single(phi, p, e, offsets);
        plus[i] = (fp - d0) / scale;
        minus[i] = (d0 - fm) / scale;
    }
    std::vector<std::pair<double, std::vector<double>>> out;
    std::vector<double> central(n);
    for (int i = 0; i < n; ++i) central[i] = 0.5 * (plus[i] + minus[i]);
    out.emplace_back(d0, central);
    out.emplace_back(d0, plus);
    out.emplace_back(d0, minus);
    for (int i = 0; i < n; ++i) {
        auto v = central;
        v[i] = plus[i];
        out.emplace_back(d0, v);
        v[i] = minus[i];
        out.emplace_back(d0, v);
    }
    out.emplace_back(d0 - 0.5 * std::abs(d0) - 0.1, central);
    return out;
}

}  // namespace pathhj
