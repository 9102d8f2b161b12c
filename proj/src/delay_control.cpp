#include "pathhj/delay_control.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pathhj/metrics.hpp"
#include "pathhj/parallel.hpp"
#include "pathhj/rng.hpp"

namespace pathhj {

namespace {

void validate(const DelayControlProblem& prob, const PathPoint& p) {
    require_same_grid(prob.grid, p.grid(), "delay_control");
    if (prob.U.empty()) throw std::invalid_argument("delay_control: empty control set");
}

long long pow_ll(long long base, int exp, long long cap) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > cap / base) return cap + 1;
        r *= base;
    }
    return r;
}

/// Incremental Euler walker: keeps the growing node buffer and per-step
/// trapezoid costs so tree enumeration can push/pop steps cheaply.
class MotionWalker {
  public:
    MotionWalker(const DelayControlProblem& prob, const PathPoint& p)
        : prob_(prob), grid_(prob.grid), start_(p.t_index()) {
        vals_.assign(p.raw().begin(), p.raw().end());
    }

    int start_index() const { return start_; }
    int steps_total() const { return grid_.steps_T - start_; }
    int depth() const { return static_cast<int>(step_costs_.size()); }

    PathPoint current_restriction() const {
        std::vector<double> v(vals_);
        return SampledPath::from_values(grid_, start_ + depth(), std::move(v));
    }

    void push(int control) {
        const auto& u = prob_.U[control];
        const int t_index = start_ + depth();
        const PathPoint left = current_restriction();
        const std::vector<double> drift = prob_.f(left, u);
        const double chi_l = prob_.chi(left, u);
        const size_t base = vals_.size();
        vals_.resize(base + grid_.n);
        for (int i = 0; i < grid_.n; ++i)
            vals_[base + i] = vals_[base - grid_.n + i] + grid_.dt * drift[i];
        const PathPoint right =
            SampledPath::from_values(grid_, t_index + 1, std::vector<double>(vals_));
        const double chi_r = prob_.chi(right, u);
        step_costs_.push_back(0.5 * grid_.dt * (chi_l + chi_r));
    }

    void pop() {
        vals_.resize(vals_.size() - grid_.n);
        step_costs_.pop_back();
    }

    double accumulated_cost() const {
        double s = 0.0;
        for (double c : step_costs_) s += c;
        return s;
    }

    SampledPath full_path() const {
        if (depth() != steps_total())
            throw std::logic_error("MotionWalker: path incomplete");
        return SampledPath::from_values(grid_, grid_.steps_T, std::vector<double>(vals_));
    }

  private:
    const DelayControlProblem& prob_;
    GridSpec grid_;
    int start_;
    std::vector<double> vals_;
    std::vector<double> step_costs_;
};

struct Best {
    double value = std::numeric_limits<double>::infinity();
    std::vector<int> signal;

    void offer(double v, const std::vector<int>& sig) {
        if (v < value || (v == value && (signal.empty() ||
                                         std::lexicographical_compare(
                                             sig.begin(), sig.end(), signal.begin(),
                                             signal.end())))) {
            value = v;
            signal = sig;
        }
    }
};

void dfs(const DelayControlProblem& prob, MotionWalker& walker, std::vector<int>& sig,
         Best& best, long long& explored) {
    if (walker.depth() == walker.steps_total()) {
        ++explored;
        best.offer(walker.accumulated_cost() + prob.sigma(walker.full_path()), sig);
        return;
    }
    for (int c = 0; c < static_cast<int>(prob.U.size()); ++c) {
        walker.push(c);
        sig.push_back(c);
        dfs(prob, walker, sig, best, explored);
        sig.pop_back();
        walker.pop();
    }
}

}  // namespace

SampledPath integrate_motion(const DelayControlProblem& prob, const PathPoint& p,
                             const ControlSignal& u) {
    validate(prob, p);
    if (u.start_index != p.t_index())
        throw std::invalid_argument("integrate_motion: signal start mismatch");
    const int steps = prob.grid.steps_T - p.t_index();
    if (static_cast<int>(u.steps.size()) != steps)
        throw std::invalid_argument("integrate_motion: expected one control per step");
    MotionWalker walker(prob, p);
    for (int c : u.steps) {
        if (c < 0 || c >= static_cast<int>(prob.U.size()))
            throw std::invalid_argument("integrate_motion: control index out of range");
        walker.push(c);
    }
    return walker.full_path();
}

double cost(const DelayControlProblem& prob, const PathPoint& p, const ControlSignal& u) {
    validate(prob, p);
    MotionWalker walker(prob, p);
    for (int c : u.steps) walker.push(c);
    return walker.accumulated_cost() + prob.sigma(walker.full_path());
}

ValueResult value_exhaustive(const DelayControlProblem& prob, const PathPoint& p,
                             long long budget) {
    validate(prob, p);
    const int steps = prob.grid.steps_T - p.t_index();
    ValueResult out;
    out.exact = true;
    if (steps == 0) {
        out.value = prob.sigma(constant_extension(p, prob.grid.steps_T));
        out.witness = ControlSignal{p.t_index(), {}};
        out.explored = 1;
        return out;
    }
    const long long total = pow_ll(static_cast<long long>(prob.U.size()), steps, budget);
    if (total > budget)
        throw std::invalid_argument("value_exhaustive: |U|^steps exceeds budget");

    // parallel over first-step branches, merged in branch order
    const int branches = static_cast<int>(prob.U.size());
    std::vector<std::pair<double, std::vector<int>>> partial;
    std::vector<long long> explored(branches, 0);
    parallel_fill(partial, static_cast<size_t>(branches), [&](size_t b) {
        MotionWalker walker(prob, p);
        walker.push(static_cast<int>(b));
        std::vector<int> sig{static_cast<int>(b)};
        Best best;
        long long ex = 0;
        dfs(prob, walker, sig, best, ex);
        explored[b] = ex;
        return std::make_pair(best.value, best.signal);
    });
    Best best;
    for (int b = 0; b < branches; ++b) {
        best.offer(partial[b].first, partial[b].second);
        out.explored += explored[b];
    }
    out.value = best.value;
    out.witness = ControlSignal{p.t_index(), best.signal};
    return out;
}

ValueResult value_beam(const DelayControlProblem& prob, const PathPoint& p,
                       int width, int refine_passes) {
    validate(prob, p);
    if (width <= 0) throw std::invalid_argument("value_beam: width must be > 0");
    const int steps = prob.grid.steps_T - p.t_index();
    struct Prefix {
        std::vector<int> sig;
        double cost;
    };
    std::vector<Prefix> beam{{{}, 0.0}};
    for (int depth = 0; depth < steps; ++depth) {
        std::vector<Prefix> next;
        next.reserve(beam.size() * prob.U.size());
        for (const Prefix& pre : beam) {
            MotionWalker walker(prob, p);
            for (int c : pre.sig) walker.push(c);
            for (int c = 0; c < static_cast<int>(prob.U.size()); ++c) {
                walker.push(c);
                Prefix ext{pre.sig, walker.accumulated_cost()};
                ext.sig.push_back(c);
                next.push_back(std::move(ext));
                walker.pop();
            }
        }
        std::sort(next.begin(), next.end(), [](const Prefix& a, const Prefix& b) {
            if (a.cost != b.cost) return a.cost < b.cost;
            return std::lexicographical_compare(a.sig.begin(), a.sig.end(),
                                                b.sig.begin(), b.sig.end());
        });
        if (static_cast<int>(next.size()) > width) next.resize(width);
        beam = std::move(next);
    }
    ControlSignal sig{p.t_index(), beam.front().sig};
    double best = cost(prob, p, sig);
    // coordinate descent over steps
    for (int pass = 0; pass < refine_passes; ++pass) {
        bool improved = false;
        for (int s = 0; s < steps; ++s) {
            const int keep = sig.steps[s];
            for (int c = 0; c < static_cast<int>(prob.U.size()); ++c) {
                if (c == keep) continue;
                sig.steps[s] = c;
                const double v = cost(prob, p, sig);
                if (v < best) {
                    best = v;
                    improved = true;
                } else {
                    sig.steps[s] = keep;
                }
                if (sig.steps[s] == c && v >= best && v != best) sig.steps[s] = keep;
            }
        }
        if (!improved) break;
    }
    ValueResult out;
    out.value = best;
    out.witness = sig;
    out.exact = false;
    out.explored = static_cast<long long>(width) * steps * static_cast<long long>(prob.U.size());
    return out;
}

double bellman_hamiltonian(const DelayControlProblem& prob, const PathPoint& p,
                           std::span<const double> s) {
    validate(prob, p);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& u : prob.U) {
        const std::vector<double> drift = prob.f(p, u);
        double v = prob.chi(p, u);
        for (int i = 0; i < prob.grid.n; ++i) v += s[i] * drift[i];
        best = std::min(best, v);
    }
    return best;
}

SampledPath greedy_motion(const DelayControlProblem& prob, const PathPoint& p,
                          std::span<const double> s) {
    validate(prob, p);
    MotionWalker walker(prob, p);
    for (int st = 0; st < prob.grid.steps_T - p.t_index(); ++st) {
        const PathPoint left = walker.current_restriction();
        int arg = 0;
        double best = std::numeric_limits<double>::infinity();
        for (int c = 0; c < static_cast<int>(prob.U.size()); ++c) {
            const std::vector<double> drift = prob.f(left, prob.U[c]);
            double v = prob.chi(left, prob.U[c]);
            for (int i = 0; i < prob.grid.n; ++i) v += s[i] * drift[i];
            if (v < best) {
                best = v;
                arg = c;
            }
        }
        walker.push(arg);
    }
    return walker.full_path();
}

double dpp_residual(const DelayControlProblem& prob, const PathPoint& p,
                    int tau_index, long long budget) {
    validate(prob, p);
    if (tau_index <= p.t_index() || tau_index > prob.grid.steps_T)
        throw std::invalid_argument("dpp_residual: tau must lie in (t, T]");
    const double direct = value_exhaustive(prob, p, budget).value;

    const int prefix_steps = tau_index - p.t_index();
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> sig(prefix_steps, 0);
    MotionWalker walker(prob, p);
    // depth-first over control prefixes on [t, tau)
    std::function<void(int)> rec = [&](int depth) {
        if (depth == prefix_steps) {
            const double tail =
                value_exhaustive(prob, walker.current_restriction(), budget).value;
            best = std::min(best, walker.accumulated_cost() + tail);
            return;
        }
        for (int c = 0; c < static_cast<int>(prob.U.size()); ++c) {
            walker.push(c);
            rec(depth + 1);
            walker.pop();
        }
    };
    rec(0);
    return std::abs(direct - best);
}

RegularityReport regularity_report(const DelayControlProblem& prob, double alpha,
                                   int budget, uint64_t seed) {
    RegularityReport rep;
    rep.alpha = alpha;
    rep.sigma_rho1_lipschitz = prob.sigma_rho1_lipschitz;
    const GridSpec& g = prob.grid;
    rep.alpha_star_gronwall = (1.0 + alpha) * std::exp(prob.c_fchi * g.T) - 1.0;

    auto random_start = [&](Rng& rng, int t_index) {
        std::vector<double> vals(static_cast<size_t>(g.nodes_at(t_index)) * g.n);
        std::vector<double> cur(g.n);
        for (int i = 0; i < g.n; ++i) cur[i] = rng.uniform(-alpha, alpha);
        for (int k = 0; k < g.nodes_at(t_index); ++k)
            for (int i = 0; i < g.n; ++i) {
                cur[i] = std::clamp(cur[i] + rng.uniform(-alpha, alpha) * 4.0 * g.dt,
                                    -alpha / std::sqrt(double(g.n)),
                                    alpha / std::sqrt(double(g.n)));
                vals[static_cast<size_t>(k) * g.n + i] = cur[i];
            }
        return SampledPath::from_values(g, t_index, std::move(vals));
    };

    const long long enum_budget = 1LL << 22;
    for (int j = 0; j < budget; ++j) {
        Rng rng = Rng::derived(seed, 30, j);
        const int t_index = rng.uniform_int(0, g.steps_T - 1);
        const PathPoint start = random_start(rng, t_index);
        // growth envelope: random signals
        for (int trial = 0; trial < 4; ++trial) {
            ControlSignal sig{t_index, {}};
            for (int st = 0; st < g.steps_T - t_index; ++st)
                sig.steps.push_back(rng.uniform_int(0, static_cast<int>(prob.U.size()) - 1));
            rep.alpha_star_empirical = std::max(
                rep.alpha_star_empirical, sup_norm(integrate_motion(prob, start, sig)));
        }
        // modulus scatter: same-t pair
        const PathPoint other = random_start(rng, t_index);
        const double r1 = rho_1(start, other);
        if (r1 > 1e-12) {
            const double dv = std::abs(value_exhaustive(prob, start, enum_budget).value -
                                       value_exhaustive(prob, other, enum_budget).value);
            rep.modulus.push_back({r1, dv});
            rep.lambda_fit = std::max(rep.lambda_fit, dv / r1);
        }
    }
    return rep;
}

DelayControlProblem make_integrator_problem(const GridSpec& grid,
                                            std::vector<std::vector<double>> U) {
    DelayControlProblem prob;
    prob.grid = grid;
    prob.U = std::move(U);
    prob.name = "integrator";
    double umax = 0.0;
    for (const auto& u : prob.U) {
        double s = 0.0;
        for (double x : u) s += x * x;
        umax = std::max(umax, std::sqrt(s));
    }
    prob.c_fchi = std::max(1.0, umax);
    prob.f = [n = grid.n](const PathPoint&, std::span<const double> u) {
        return std::vector<double>(u.begin(), u.begin() + n);
    };
    prob.chi = [](const PathPoint&, std::span<const double>) { return 0.0; };
    prob.sigma = [](const SampledPath& z) { return current_norm(z); };
    prob.sigma_rho1_lipschitz = true;
    return prob;
}

DelayControlProblem make_linear_delay_problem(const GridSpec& grid,
                                              std::vector<std::vector<double>> U,
                                              std::vector<double> A0,
                                              std::vector<double> A1,
                                              std::vector<double> B,
                                              const std::string& sigma_kind,
                                              const std::string& chi_kind) {
    const int n = grid.n;
    const int m = U.empty() ? 0 : static_cast<int>(U.front().size());
    if (static_cast<int>(A0.size()) != n * n || static_cast<int>(A1.size()) != n * n)
        throw std::invalid_argument("linear_delay: A0/A1 must be n x n");
    if (static_cast<int>(B.size()) != n * m)
        throw std::invalid_argument("linear_delay: B must be n x m");
    DelayControlProblem prob;
    prob.grid = grid;
    prob.U = std::move(U);
    prob.name = "linear_delay";
    const int lag = grid.steps_h;
    prob.f = [n, m, lag, A0 = std::move(A0), A1 = std::move(A1), B = std::move(B)](
                 const PathPoint& p, std::span<const double> u) {
        std::vector<double> out(n, 0.0);
        auto zt = p.current();
        auto zlag = p.node(p.end_node() - lag);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j)
                out[i] += A0[i * n + j] * zt[j] + A1[i * n + j] * zlag[j];
            for (int j = 0; j < m; ++j) out[i] += B[i * m + j] * u[j];
        }
        return out;
    };
    if (chi_kind == "zero") {
        prob.chi = [](const PathPoint&, std::span<const double>) { return 0.0; };
    } else if (chi_kind == "one") {
        prob.chi = [](const PathPoint&, std::span<const double>) { return 1.0; };
    } else if (chi_kind == "quadratic") {
        prob.chi = [](const PathPoint& p, std::span<const double> u) {
            double s = 0.0;
            for (double x : p.current()) s += x * x;
            for (double x : u) s += x * x;
            return s;
        };
    } else {
        throw std::invalid_argument("/chi/kind: unknown builtin '" + chi_kind + "'");
    }
    if (sigma_kind == "norm_terminal") {
        prob.sigma = [](const SampledPath& z) { return current_norm(z); };
        prob.sigma_rho1_lipschitz = true;
    } else if (sigma_kind == "quadratic_terminal") {
        prob.sigma = [](const SampledPath& z) {
            const double v = current_norm(z);
            return v * v;
        };
        prob.sigma_rho1_lipschitz = true;  // locally, on bounded sets
    } else if (sigma_kind == "indicator_midpoint") {
        prob.sigma = [](const SampledPath& z) {
            const int mid = z.grid().steps_h + z.grid().steps_T / 2;
            return z.node(mid)[0] > 0.0 ? 1.0 : 0.0;
        };
        prob.sigma_rho1_lipschitz = false;
    } else {
        throw std::invalid_argument("/sigma/kind: unknown builtin '" + sigma_kind + "'");
    }
    // growth scale: row-sum bound on the matrices plus control drift
    double a_norm = 0.0;
    // note: A0/A1 were moved into the closure; recompute from f on the zero
    // and unit histories instead of keeping copies around
    const GridSpec& gg = prob.grid;
    std::vector<double> zero_u(m, 0.0);
    std::vector<double> ones(n, 1.0);
    const PathPoint unit = SampledPath::constant(gg, 0, ones);
    const std::vector<double> fu = prob.f(unit, zero_u);
    for (double x : fu) a_norm += std::abs(x);
    double b_norm = 0.0;
    std::vector<double> zeros(n, 0.0);
    const PathPoint origin = SampledPath::constant(gg, 0, zeros);
    for (const auto& u : prob.U) {
        const std::vector<double> fb = prob.f(origin, u);
        double s = 0.0;
        for (double x : fb) s += std::abs(x);
        b_norm = std::max(b_norm, s);
    }
    prob.c_fchi = std::max(1.0, 2.0 * (a_norm + b_norm) + 1.0);
    return prob;
}

}  // namespace pathhj
