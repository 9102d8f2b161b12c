// Acceptance suite: one verification per numbered criterion, each printed as
// a single PASS/FAIL line with its measured runtime. Every tolerance is
// pinned here. The final criterion re-runs the whole battery with the same
// seed and with different worker counts and demands byte-identical digests.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "pathhj/bp.hpp"
#include "pathhj/delay_control.hpp"
#include "pathhj/gauge.hpp"
#include "pathhj/metrics.hpp"
#include "pathhj/parallel.hpp"
#include "pathhj/solution_checkers.hpp"

using namespace pathhj;

namespace {

constexpr uint64_t kSeed = 2026;

struct Outcome {
    bool pass = false;
    std::string detail;
    std::string digest;
    double seconds = 0.0;
};

class Digest {
  public:
    void add(double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g;", v);
        text_ += buf;
    }
    void add(bool v) { text_ += v ? "T;" : "F;"; }
    const std::string& str() const { return text_; }

  private:
    std::string text_;
};

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

// ---- criterion 1: surrogate bounds on 10^4 random paths --------------------

Outcome criterion_gauge_bounds() {
    Outcome out;
    Digest dig;
    const GridSpec grids[3] = {GridSpec::make(0.5, 1.0, 1.0 / 64, 1),
                               GridSpec::make(0.5, 1.0, 1.0 / 64, 2),
                               GridSpec::make(0.5, 1.0, 1.0 / 64, 3)};
    struct Margins {
        double lower, upper, grad;
    };
    std::vector<Margins> all;
    parallel_fill(all, 10000, [&](size_t i) {
        Rng rng = Rng::derived(kSeed, 101, i);
        const GridSpec& g = grids[i % 3];
        const PathPoint p =
            random_path(g, rng.uniform_int(0, g.steps_T - 1), rng.uniform(0.05, 2.5), rng);
        const auto m = smooth_norm2_bounds_margin(p);
        return Margins{m.lower, m.upper, smooth_norm2_grad_margin(p)};
    });
    double worst = 0.0;
    for (const auto& m : all) worst = std::min({worst, m.lower, m.upper, m.grad});
    dig.add(worst);
    out.pass = worst >= -1e-12;
    out.detail = "worst margin " + std::to_string(worst);
    out.digest = dig.str();
    return out;
}

// ---- criterion 2: metric comparison on 10^4 random pairs -------------------

Outcome criterion_metric_inequality() {
    Outcome out;
    Digest dig;
    const GridSpec grids[3] = {GridSpec::make(0.5, 1.0, 1.0 / 64, 1),
                               GridSpec::make(0.5, 1.0, 1.0 / 64, 2),
                               GridSpec::make(0.5, 1.0, 1.0 / 64, 3)};
    std::vector<double> slack;
    parallel_fill(slack, 10000, [&](size_t i) {
        Rng rng = Rng::derived(kSeed, 102, i);
        const GridSpec& g = grids[i % 3];
        const PathPoint p =
            random_path(g, rng.uniform_int(0, g.steps_T), rng.uniform(0.05, 2.5), rng);
        const PathPoint q =
            random_path(g, rng.uniform_int(0, g.steps_T), rng.uniform(0.05, 2.5), rng);
        return (1.0 + g.T + g.h) * rho_inf(p, q) - rho_1(p, q);
    });
    double worst = 0.0;
    for (double s : slack) worst = std::min(worst, s);
    dig.add(worst);
    out.pass = worst >= -1e-12;
    out.detail = "worst slack " + std::to_string(worst);
    out.digest = dig.str();
    return out;
}

// ---- criterion 3: direction-dependence probe -------------------------------

Outcome criterion_probe() {
    Outcome out;
    Digest dig;
    const double ls[3] = {1.5, 2.0, 4.0};
    double limits[3];
    bool ok = true;
    std::ostringstream detail;
    for (int i = 0; i < 3; ++i) {
        limits[i] = direction_dependence_probe(ls[i]).limit;
        const double expected = 2.0 * (ls[i] - 1.0) / ls[i];
        ok = ok && std::abs(limits[i] - expected) <= 1e-3;
        dig.add(limits[i]);
        detail << "l=" << ls[i] << ":" << limits[i] << " ";
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            ok = ok && std::abs(limits[i] - limits[j]) > 0.1;
    out.pass = ok;
    out.detail = detail.str();
    out.digest = dig.str();
    return out;
}

// ---- criterion 4: smooth consistency of the derivative estimator -----------

Outcome criterion_smooth_consistency() {
    Outcome out;
    Digest dig;
    const GridSpec g = GridSpec::make(0.5, 1.0, 1.0 / 256, 1);
    const double qv[1] = {-0.4};
    const PathPoint anchor = SampledPath::constant(g, g.steps_T / 4, qv);
    const Functional vfun{[](const PathPoint& p) { return smooth_norm2(p); },
                          kContinuous, "surrogate"};
    const Functional quad{[&anchor](const PathPoint& p) {
                              return quad_distance(p, anchor);
                          },
                          kContinuous, "quad"};
    const Functional aff{[](const PathPoint& p) {
                             return 0.9 * p.current()[0] - 0.2 * p.t();
                         },
                         kContinuous, "affine"};
    double worst = 0.0;
    const auto offsets = dyadic_offsets(g, 0);
    for (int trial = 0; trial < 50; ++trial) {
        Rng rng = Rng::derived(kSeed, 104, trial);
        std::vector<double> vals(g.nodes_at(0));
        for (size_t k = 0; k < vals.size(); ++k)
            vals[k] = 1.1 + 0.1 * std::sin(0.3 * static_cast<double>(k) + trial);
        vals.back() = rng.uniform(0.3, 0.8);
        const PathPoint p = SampledPath::from_values(g, 0, std::move(vals));
        const double l[1] = {rng.uniform(-1.0, 1.0)};

        const double e1 = std::abs(dir_deriv_single(vfun, p, l, offsets) -
                                   (smooth_norm2_dt(p) + smooth_norm2_grad(p)[0] * l[0]));
        const double e2 = std::abs(dir_deriv_single(quad, p, l, offsets) -
                                   quad_distance_grad1(p, anchor)[0] * l[0]);
        const double e3 = std::abs(dir_deriv_single(aff, p, l, offsets) -
                                   (-0.2 + 0.9 * l[0]));
        worst = std::max({worst, e1, e2, e3});
    }
    dig.add(worst);
    out.pass = worst <= 1e-3;
    out.detail = "worst error " + std::to_string(worst);
    out.digest = dig.str();
    return out;
}

// ---- shared battery for criteria 5 and 6 -----------------------------------

std::vector<std::pair<Functional, GridSpec>> lipschitz_battery() {
    std::vector<std::pair<Functional, GridSpec>> out;
    const GridSpec g1 = GridSpec::make(0.5, 1.0, 1.0 / 256, 1);
    const GridSpec g2 = GridSpec::make(0.5, 1.0, 1.0 / 256, 2);
    const auto tag = kContinuous | kRho1LowerSemicontinuous |
                     kRho1UpperSemicontinuous | kLocallyLipschitz;
    out.push_back({{[](const PathPoint& p) {
                        return 0.8 * p.current()[0] + 0.3 * p.t();
                    },
                    tag, "affine"},
                   g1});
    out.push_back({{[](const PathPoint& p) { return -1.2 * p.current()[0]; }, tag,
                    "neg_affine"},
                   g1});
    out.push_back({{[](const PathPoint& p) { return std::abs(p.current()[0]); }, tag,
                    "abs_state"},
                   g1});
    out.push_back({{[](const PathPoint& p) {
                        return std::max(0.0, p.current()[0] - 0.25);
                    },
                    tag, "hinge"},
                   g1});
    out.push_back({{[](const PathPoint& p) {
                        std::vector<double> s(p.node_count());
                        for (int k = 0; k < p.node_count(); ++k)
                            s[k] = std::abs(p.node(k)[0]);
                        return integrate_scalar(s, p.grid().dt);
                    },
                    tag, "history_l1"},
                   g1});
    out.push_back({{[](const PathPoint& p) { return p.t() * p.current()[0]; }, tag,
                    "time_state"},
                   g1});
    out.push_back({{[](const PathPoint& p) {
                        return std::min(0.7 * p.current()[0], -0.4 * p.current()[0]);
                    },
                    tag, "min_affine"},
                   g1});
    out.push_back({{[](const PathPoint& p) {
                        auto x = p.current();
                        return std::hypot(x[0], x[1]);
                    },
                    tag, "norm_state"},
                   g2});
    out.push_back({{[](const PathPoint& p) {
                        auto x = p.current();
                        return 0.5 * x[0] - 0.9 * x[1] + 0.2 * p.t();
                    },
                    tag, "affine2"},
                   g2});
    const double qv[1] = {0.3};
    auto q = std::make_shared<PathPoint>(SampledPath::constant(g1, g1.steps_T / 2, qv));
    out.push_back({{[q](const PathPoint& p) { return quad_distance(p, *q); }, tag,
                    "quad_anchor"},
                   g1});
    return out;
}

// ---- criterion 5: finite-direction reduction on the battery ----------------

Outcome criterion_lipschitz_reduction() {
    Outcome out;
    Digest dig;
    double worst = 0.0;
    for (auto& [phi, g] : lipschitz_battery()) {
        Rng rng(100 + std::hash<std::string>{}(phi.name) % 97);
        const PathPoint p = random_path(g, g.steps_T / 3, 0.9, rng);
        const double radius = 0.8;
        const auto multi =
            dir_deriv_multi(phi, p, DirectionSet::ball(g.n, radius), 64, kSeed);
        double dense = std::numeric_limits<double>::infinity();
        const auto offsets = dyadic_offsets(g, p.t_index());
        auto probe = [&](std::vector<double> l) {
            dense = std::min(dense, dir_deriv_single(phi, p, l, offsets));
        };
        if (g.n == 1) {
            for (int k = -16; k <= 16; ++k) probe({radius * k / 16.0});
        } else {
            for (int k = 0; k < 128; ++k) {
                const double a = 2.0 * 3.14159265358979323846 * k / 128.0;
                for (double r : {radius, 0.5 * radius, 0.0})
                    probe({r * std::cos(a), r * std::sin(a)});
            }
        }
        worst = std::max(worst, std::abs(multi.estimate - dense));
        dig.add(multi.estimate);
        dig.add(dense);
    }
    out.pass = worst <= 2e-3;
    out.detail = "worst |multi - dense| " + std::to_string(worst);
    out.digest = dig.str();
    return out;
}

// ---- criterion 6: margin ordering chain across the battery -----------------

Outcome criterion_ordering_chain() {
    Outcome out;
    Digest dig;
    HamiltonianSpec H;
    H.c_H = 1.0;
    H.eval = [](const PathPoint&, std::span<const double> s) {
        double v = 0.0;
        for (double x : s) v += x * x;
        return -std::sqrt(v);
    };
    CheckerConfig cfg;
    cfg.budget = 32;
    cfg.seed = kSeed;
    double worst = -std::numeric_limits<double>::infinity();
    for (auto& [phi, g] : lipschitz_battery()) {
        Rng rng(200 + std::hash<std::string>{}(phi.name) % 89);
        for (int trial = 0; trial < 2; ++trial) {
            const PathPoint p =
                random_path(g, rng.uniform_int(0, g.steps_T - 8), 1.0, rng);
            std::vector<double> s(g.n);
            for (double& x : s) x = rng.uniform(-1.5, 1.5);
            const double multi = check_um_multi(phi, H, p, s, cfg).margin;
            const double d0 = check_um_d0(phi, H, p, s, cfg).margin;
            const double infext = check_uv_infext(phi, H, p, s, cfg).margin;
            worst = std::max({worst, d0 - multi, infext - multi});
            dig.add(multi);
            dig.add(d0);
            dig.add(infext);
        }
    }
    out.pass = worst <= 1e-9;
    out.detail = "worst chain violation " + std::to_string(worst);
    out.digest = dig.str();
    return out;
}

// ---- criterion 7: exhaustive value against the closed form -----------------

Outcome criterion_value_oracle() {
    Outcome out;
    Digest dig;
    const GridSpec g = GridSpec::make(0.2, 1.0, 1.0 / 10, 1);
    const DelayControlProblem prob =
        make_integrator_problem(g, {{-1.0}, {0.0}, {1.0}});
    double worst_value = 0.0, worst_residual = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        Rng rng = Rng::derived(kSeed, 107, trial);
        const int ti = rng.uniform_int(0, g.steps_T - 1);
        // lattice starts (plus far starts) keep Euler exactly on the oracle
        const double xv = trial % 4 == 0 ? rng.uniform(1.1, 2.0)
                                         : g.dt * rng.uniform_int(-15, 15);
        const double x0[1] = {xv};
        const PathPoint p = SampledPath::constant(g, ti, x0);
        const auto res = value_exhaustive(prob, p, 1LL << 22);
        const double oracle = std::max(0.0, std::abs(xv) - (g.T - p.t()));
        worst_value = std::max(worst_value, std::abs(res.value - oracle));
        dig.add(res.value);
        for (int tau = ti + 1; tau <= g.steps_T; ++tau)
            worst_residual =
                std::max(worst_residual, dpp_residual(prob, p, tau, 1LL << 22));
    }
    dig.add(worst_value);
    dig.add(worst_residual);
    out.pass = worst_value <= 1e-9 && worst_residual <= 1e-9;
    out.detail = "value err " + std::to_string(worst_value) + ", dpp residual " +
                 std::to_string(worst_residual);
    out.digest = dig.str();
    return out;
}

// ---- criterion 8: delay dynamics against the two-interval closed form ------

Outcome criterion_delay_oracle() {
    Outcome out;
    Digest dig;
    const GridSpec g = GridSpec::make(0.5, 1.0, 1.0 / 256, 1);
    const DelayControlProblem prob = make_linear_delay_problem(
        g, {{0.0}}, {0.0}, {-1.0}, {0.0}, "norm_terminal", "zero");
    const double one[1] = {1.0};
    const PathPoint p = SampledPath::constant(g, 0, one);
    const SampledPath z =
        integrate_motion(prob, p, ControlSignal{0, std::vector<int>(g.steps_T, 0)});
    auto exact = [](double tau) {
        if (tau <= 0.5) return 1.0 - tau;
        const double s = tau - 0.5;
        return 0.5 - (s - 0.5 * s * s);
    };
    double worst = 0.0;
    for (int k = 0; k <= g.steps_T; ++k)
        worst = std::max(worst,
                         std::abs(z.node(g.steps_h + k)[0] - exact(g.index_time(k))));
    dig.add(worst);
    out.pass = worst <= 1e-3;
    out.detail = "max node error " + std::to_string(worst);
    out.digest = dig.str();
    return out;
}

// ---- criterion 9: solution-criteria agreement on the integrator ------------

Outcome criterion_criteria_agreement() {
    Outcome out;
    Digest dig;
    const GridSpec g = GridSpec::make(0.5, 1.0, 1.0 / 64, 1);
    const DelayControlProblem prob =
        make_integrator_problem(g, {{-1.0}, {0.0}, {1.0}});
    HamiltonianSpec H;
    H.c_H = 1.0;
    H.eval = [](const PathPoint&, std::span<const double> s) {
        return -std::abs(s[0]);
    };

    auto value_fn = [](double drift) {
        Functional f;
        f.tags = kContinuous | kRho1LowerSemicontinuous | kRho1UpperSemicontinuous |
                 kLocallyLipschitz;
        f.name = "value";
        f.eval = [drift](const PathPoint& p) {
            return std::max(0.0, std::abs(p.current()[0]) - (p.grid().T - p.t())) +
                   drift * (p.grid().T - p.t());
        };
        return f;
    };

    CheckerConfig cfg;
    cfg.tol = 1e-2;
    cfg.budget = 32;
    cfg.seed = kSeed;
    auto shared = std::make_shared<DelayControlProblem>(prob);
    cfg.extra_candidates = [shared](const PathPoint& p, std::span<const double> s) {
        // optimal feedback (steer to the nearest lattice point of zero) and
        // the shift-greedy feedback
        std::vector<SampledPath> cands;
        ControlSignal sig{p.t_index(), {}};
        double x = p.current()[0];
        for (int k = p.t_index(); k < p.grid().steps_T; ++k) {
            int u = 1;
            if (x > 0.5 * p.grid().dt)
                u = 0;
            else if (x < -0.5 * p.grid().dt)
                u = 2;
            x += p.grid().dt * shared->U[u][0];
            sig.steps.push_back(u);
        }
        cands.push_back(integrate_motion(*shared, p, sig));
        cands.push_back(greedy_motion(*shared, p, s));
        return cands;
    };

    // 20 sampled (point, s) pairs; half probe s = 0 where time drifts are
    // unmasked
    std::vector<std::pair<PathPoint, std::vector<double>>> pairs;
    for (int j = 0; j < 10; ++j) {
        Rng rng = Rng::derived(kSeed, 109, j);
        const int ti = rng.uniform_int(0, g.steps_T - 8);
        const double x0[1] = {rng.uniform(-1.3, 1.3)};
        const PathPoint p = SampledPath::constant(g, ti, x0);
        pairs.push_back({p, {rng.uniform(-2.0, 2.0)}});
        pairs.push_back({p, {0.0}});
    }

    struct Verdict {
        bool upper = true;
        bool lower = true;
    };
    auto sweep = [&](const Functional& phi) {
        Verdict v;
        for (const auto& [p, s] : pairs) {
            const int tau =
                std::min(g.steps_T, p.t_index() + std::max(4, (g.steps_T - p.t_index()) / 2));
            bool up = check_upper_minimax(phi, H, p, tau, s, cfg).pass;
            up = up && check_upper_viscosity(phi, H, p, cfg).pass;
            up = up && check_um_multi(phi, H, p, s, cfg).pass;
            up = up && check_uv_infext(phi, H, p, s, cfg).pass;
            up = up && check_um_lip(phi, H, p, s, cfg).pass;
            up = up && check_um_d0(phi, H, p, s, cfg).pass;
            bool low = check_lower_minimax(phi, H, p, tau, s, cfg).pass;
            low = low && check_lower_viscosity(phi, H, p, cfg).pass;
            v.upper = v.upper && up;
            v.lower = v.lower && low;
            dig.add(up);
            dig.add(low);
        }
        return v;
    };

    const Verdict solution = sweep(value_fn(0.0));
    const Verdict super = sweep(value_fn(0.5));
    const Verdict sub = sweep(value_fn(-0.5));

    out.pass = solution.upper && solution.lower &&  // the solution passes all
               super.upper && !super.lower &&       // + drift fails lower only
               !sub.upper && sub.lower;             // - drift fails upper only
    std::ostringstream detail;
    detail << "value[U" << solution.upper << " L" << solution.lower << "] plus[U"
           << super.upper << " L" << super.lower << "] minus[U" << sub.upper
           << " L" << sub.lower << "]";
    out.detail = detail.str();
    out.digest = dig.str();
    return out;
}

// ---- criterion 10: perturbed minimization clause suite ----------------------

Outcome criterion_bp_suite() {
    Outcome out;
    Digest dig;
    const GridSpec g = GridSpec::make(0.5, 1.0, 1.0 / 64, 1);
    std::vector<PathPoint> pts;
    for (int j = 0; j < 200; ++j) {
        Rng rng = Rng::derived(kSeed, 110, j);
        pts.push_back(random_path(g, rng.uniform_int(0, g.steps_T - 1),
                                  rng.uniform(0.2, 1.0), rng));
    }
    const DiscreteSet X = DiscreteSet::make(std::move(pts), 1.0);
    const PathPoint target = X.points[13];
    const Functional phi{[&target](const PathPoint& p) {
                             const double d = rho_inf(p, target);
                             return d * d;
                         },
                         kContinuous, "sqdist"};
    const GaugeParams gauge = GaugeParams::make(1.0, g.T);

    bool ok = true;
    std::ostringstream detail;
    for (double kappa : {1.0, 0.25}) {
        const auto res = bp_minimize(phi, X, kappa, 8);
        const double at_min = phi(res.minimizer) + res.psi.eval(res.minimizer);
        double psi_max = 0.0;
        for (const auto& q : X.points) {
            const double v = res.psi.eval(q);
            psi_max = std::max(psi_max, v);
            ok = ok && v >= 0.0 && v <= 2.0 * gauge.cap() * kappa + 1e-12;
            ok = ok && at_min <= phi(q) + v + 1e-12;
        }
        for (size_t k = 0; k < res.anchor_gauge.size(); ++k)
            ok = ok &&
                 res.anchor_gauge[k] <= kappa / std::ldexp(1.0, static_cast<int>(k));
        const auto [dt_part, grad] = res.psi.ci_derivatives(res.minimizer);
        double gn = 0.0;
        for (double x : grad) gn += x * x;
        ok = ok && std::abs(dt_part) <= 4.0 * g.T * kappa;
        ok = ok && std::sqrt(gn) <= 8.0 * X.alpha * kappa;
        dig.add(at_min);
        dig.add(psi_max);
        dig.add(dt_part);
        dig.add(std::sqrt(gn));
        detail << "kappa=" << kappa << " anchors=" << res.psi.anchors.size() << " ";
    }
    out.pass = ok;
    out.detail = detail.str();
    out.digest = dig.str();
    return out;
}

// ---- criterion 11: subgradient search ---------------------------------------

Outcome criterion_subgradient_search() {
    Outcome out;
    Digest dig;
    const GridSpec g = GridSpec::make(0.25, 1.0, 1.0 / 2048, 1);
    const double x0[1] = {0.3};
    const PathPoint start = SampledPath::constant(g, g.index_of(0.25), x0);
    const auto tags =
        kContinuous | kRho1LowerSemicontinuous | kLocallyLipschitz;
    SubgradParams prm;
    prm.eta = 0.1;
    prm.seed = kSeed;

    bool ok = true;
    std::ostringstream detail;
    auto run = [&](const Functional& phi, const DirectionSet& L, const char* tagname) {
        const auto res = subgradient_search(phi, start, L, prm);
        ok = ok && !res.refused && res.k_used >= 0;
        ok = ok && res.rho_to_start <= prm.eta + 1e-12;
        ok = ok && res.margin > 0.0;
        ok = ok && res.membership;
        for (const auto& d : res.diagnostics) {
            ok = ok && d.quad_dist <= d.quad_bound + 1e-12;
            ok = ok && d.time_gap_sq <= d.time_bound + 1e-12;
        }
        dig.add(res.margin);
        dig.add(res.p0);
        for (double x : res.p) dig.add(x);
        detail << tagname << "[k=" << res.k_used << " margin=" << res.margin << "] ";
    };

    run({[](const PathPoint& p) { return p.t(); }, tags, "time"},
        DirectionSet::polytope({{0.0}}), "time");
    run({[](const PathPoint& p) { return 0.4 * p.current()[0] + 1.2 * p.t(); }, tags,
         "affine"},
        DirectionSet::ball(1, 0.5), "affine");

    // negative control must be refused at the precondition gate
    const auto refused = subgradient_search(
        {[](const PathPoint& p) { return -p.t(); }, tags, "neg_time"}, start,
        DirectionSet::polytope({{0.0}}), prm);
    ok = ok && refused.refused;
    dig.add(refused.refused);
    detail << "control[" << (refused.refused ? "refused" : "ran") << "]";
    out.pass = ok;
    out.detail = detail.str();
    out.digest = dig.str();
    return out;
}

using CriterionFn = Outcome (*)();

struct Entry {
    int number;
    const char* name;
    CriterionFn fn;
};

const Entry kCriteria[] = {
    {1, "gauge bounds on 10^4 random paths", criterion_gauge_bounds},
    {2, "metric inequality on 10^4 random pairs", criterion_metric_inequality},
    {3, "direction-dependence probe limits", criterion_probe},
    {4, "smooth consistency of directional derivatives", criterion_smooth_consistency},
    {5, "finite-direction reduction on the Lipschitz battery",
     criterion_lipschitz_reduction},
    {6, "margin ordering chain", criterion_ordering_chain},
    {7, "integrator value oracle and DPP residual", criterion_value_oracle},
    {8, "delay dynamics oracle", criterion_delay_oracle},
    {9, "solution-criteria agreement", criterion_criteria_agreement},
    {10, "perturbed minimization clause suite", criterion_bp_suite},
    {11, "subgradient search", criterion_subgradient_search},
};

std::vector<Outcome> run_all() {
    std::vector<Outcome> outs;
    for (const auto& entry : kCriteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o = entry.fn();
        o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                        .count();
        outs.push_back(std::move(o));
    }
    return outs;
}

}  // namespace

int main() {
    set_worker_count(1);
    const auto first = run_all();
    const auto rerun = run_all();  // same seed, same worker count
    set_worker_count(4);
    const auto wide = run_all();
    set_worker_count(0);

    bool all_pass = true;
    for (size_t i = 0; i < std::size(kCriteria); ++i) {
        const auto& o = first[i];
        std::printf("[%s] criterion %2d: %s - %s (%.2f s)\n",
                    o.pass ? "PASS" : "FAIL", kCriteria[i].number, kCriteria[i].name,
                    o.detail.c_str(), o.seconds);
        all_pass = all_pass && o.pass;
    }

    bool deterministic = true;
    for (size_t i = 0; i < std::size(kCriteria); ++i) {
        deterministic = deterministic && first[i].digest == rerun[i].digest &&
                        first[i].digest == wide[i].digest;
        if (first[i].digest != rerun[i].digest)
            std::printf("  criterion %d digest differs between identical runs\n",
                        kCriteria[i].number);
        if (first[i].digest != wide[i].digest)
            std::printf("  criterion %d digest differs across worker counts\n",
                        kCriteria[i].number);
    }
    std::printf("[%s] criterion 12: determinism across reruns and workers {1, 4}\n",
                deterministic ? "PASS" : "FAIL");
    all_pass = all_pass && deterministic;

    return all_pass ? 0 : 1;
}
