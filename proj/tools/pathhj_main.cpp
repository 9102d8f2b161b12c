// pathhj: command-line front end for the path-space toolkit. Subcommands
// cover gauge diagnostics, the derivative probe, delay-control values and
// dynamic-programming residuals, solution-criteria checks, the perturbed
// minimization demo, the subgradient search, and regularity reports.
//
// Exit codes: 0 all asserted invariants passed, 1 assertion failure (the
// report names the offending entry), 2 input error (schema pointer).

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "pathhj/bp.hpp"
#include "pathhj/delay_control.hpp"
#include "pathhj/gauge.hpp"
#include "pathhj/json_io.hpp"
#include "pathhj/metrics.hpp"
#include "pathhj/parallel.hpp"
#include "pathhj/solution_checkers.hpp"

using namespace pathhj;

namespace {

struct CommonOpts {
    uint64_t seed = 1;
    double tol = 1e-2;
    long long budget = 1LL << 22;
    std::string out;
    bool no_timestamp = false;
    int workers = 0;
    double dt_override = 0.0;
};

void add_common(CLI::App* cmd, CommonOpts* opts) {
    cmd->add_option("--seed", opts->seed, "deterministic seed");
    cmd->add_option("--tol", opts->tol, "pass tolerance");
    cmd->add_option("--budget", opts->budget, "sampling / enumeration budget");
    cmd->add_option("--out", opts->out, "output file");
    cmd->add_flag("--no-timestamp", opts->no_timestamp, "omit timestamp field");
    cmd->add_option("--workers", opts->workers, "worker threads (0 = default)");
    cmd->add_option("--dt", opts->dt_override, "grid step override");
}

Json envelope(const std::string& command, const CommonOpts& opts) {
    Json j;
    j["command"] = command;
    j["seed"] = opts.seed;
    j["tolerance"] = opts.tol;
    j["budget"] = opts.budget;
    if (!opts.no_timestamp)
        j["timestamp"] = std::chrono::duration_cast<std::chrono::seconds>(
                             std::chrono::system_clock::now().time_since_epoch())
                             .count();
    return j;
}

void write_output(const CommonOpts& opts, const Json& j) {
    const std::string text = j.dump(2) + "\n";
    if (opts.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(opts.out);
        if (!f) throw SchemaError("/out", "cannot open '" + opts.out + "'");
        f << text;
    }
}

void write_text(const CommonOpts& opts, const std::string& text) {
    if (opts.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(opts.out);
        if (!f) throw SchemaError("/out", "cannot open '" + opts.out + "'");
        f << text;
    }
}

GridSpec apply_dt_override(const GridSpec& g, double dt) {
    if (dt <= 0.0) return g;
    return GridSpec::make(g.h, g.T, dt, g.n);
}

Functional problem_value_functional(const DelayControlProblem& prob,
                                    const std::string& kind, long long budget) {
    Functional f;
    f.tags = kContinuous | kRho1LowerSemicontinuous | kRho1UpperSemicontinuous |
             kLocallyLipschitz;
    auto shared = std::make_shared<DelayControlProblem>(prob);
    if (kind == "value") {
        f.name = "value";
        f.eval = [shared, budget](const PathPoint& p) {
            return value_exhaustive(*shared, p, budget).value;
        };
    } else if (kind == "value_beam") {
        f.name = "value_beam";
        f.eval = [shared](const PathPoint& p) {
            return value_beam(*shared, p, 64).value;
        };
    } else if (kind == "integrator_closed") {
        f.name = "integrator_closed";
        f.eval = [](const PathPoint& p) {
            return std::max(0.0, current_norm(p) - (p.grid().T - p.t()));
        };
    } else {
        throw SchemaError("/phi", "unknown builtin '" + kind + "'");
    }
    return f;
}

bool is_canonical_integrator(const DelayControlProblem& prob) {
    if (prob.name != "integrator" || prob.grid.n != 1 || prob.U.size() != 3)
        return false;
    return prob.U[0][0] == -1.0 && prob.U[1][0] == 0.0 && prob.U[2][0] == 1.0;
}

int run_gauge_check(const CommonOpts& opts, const std::string& paths_file) {
    const auto points = parse_points(load_json_file(paths_file));
    if (points.empty()) throw SchemaError("/points", "no paths given");
    std::ostringstream csv;
    csv.precision(17);
    csv << "index,lower_margin,upper_margin,grad_margin\n";
    bool ok = true;
    const double tol = 1e-12;
    for (size_t i = 0; i < points.size(); ++i) {
        const auto m = smooth_norm2_bounds_margin(points[i]);
        double gm = 0.0;
        if (points[i].t_index() < points[i].grid().steps_T)
            gm = smooth_norm2_grad_margin(points[i]);
        csv << i << "," << m.lower << "," << m.upper << "," << gm << "\n";
        if (m.lower < -tol || m.upper < -tol || gm < -tol) {
            ok = false;
            std::cerr << "gauge-check: margin violation at /points/" << i << "\n";
        }
    }
    write_text(opts, csv.str());
    return ok ? 0 : 1;
}

int run_counterexample(const CommonOpts& opts, double l) {
    const auto res = direction_dependence_probe(l);
    std::ostringstream csv;
    csv.precision(17);
    csv << "tau,quotient\n";
    for (size_t i = 0; i < res.taus.size(); ++i)
        csv << res.taus[i] << "," << res.quotients[i] << "\n";
    csv << 0 << "," << res.limit << "\n";
    write_text(opts, csv.str());
    if (l > 1.0) {
        const double expected = 2.0 * (l - 1.0) / l;
        if (std::abs(res.limit - expected) > 1e-3) {
            std::cerr << "counterexample: limit " << res.limit
                      << " disagrees with 2(l-1)/l = " << expected << "\n";
            return 1;
        }
    }
    return 0;
}

int run_value(const CommonOpts& opts, const std::string& problem_file,
              const std::string& point_file, const std::string& mode,
              const std::string& out_path_csv) {
    DelayControlProblem prob = parse_problem(load_json_file(problem_file));
    prob.grid = apply_dt_override(prob.grid, opts.dt_override);
    SampledPath point = parse_path(load_json_file(point_file));
    require_same_grid(point.grid(), prob.grid, "/point");

    ValueResult res;
    if (mode == "exhaustive") {
        res = value_exhaustive(prob, point, opts.budget);
    } else if (mode == "beam") {
        res = value_beam(prob, point, 64);
    } else {
        throw SchemaError("/mode", "expected 'exhaustive' or 'beam'");
    }
    Json j = envelope("value", opts);
    j["value"] = res.value;
    j["exact"] = res.exact;
    j["one_sided"] = !res.exact;
    j["explored"] = res.explored;
    j["witness"] = res.witness.steps;
    int rc = 0;
    if (is_canonical_integrator(prob)) {
        const double oracle =
            std::max(0.0, std::abs(point.current()[0]) - (prob.grid.T - point.t()));
        j["oracle_closed_form"] = oracle;
        j["oracle_abs_error"] = std::abs(res.value - oracle);
        if (res.exact && std::abs(res.value - oracle) > opts.tol) {
            std::cerr << "value: /oracle_abs_error exceeds tolerance\n";
            rc = 1;
        }
    }
    write_output(opts, j);
    if (!out_path_csv.empty()) {
        std::ofstream f(out_path_csv);
        if (!f) throw SchemaError("/out-path", "cannot open '" + out_path_csv + "'");
        f << path_to_csv(integrate_motion(prob, point, res.witness));
    }
    return rc;
}

int run_dpp(const CommonOpts& opts, const std::string& problem_file,
            const std::string& point_file, double tau) {
    DelayControlProblem prob = parse_problem(load_json_file(problem_file));
    prob.grid = apply_dt_override(prob.grid, opts.dt_override);
    SampledPath point = parse_path(load_json_file(point_file));
    require_same_grid(point.grid(), prob.grid, "/point");
    const int tau_index = prob.grid.index_of(tau);
    const double residual = dpp_residual(prob, point, tau_index, opts.budget);
    Json j = envelope("dpp", opts);
    j["tau"] = tau;
    j["residual"] = residual;
    j["one_sided"] = false;
    write_output(opts, j);
    if (residual > 1e-9) {
        std::cerr << "dpp: /residual exceeds 1e-9 in exhaustive mode\n";
        return 1;
    }
    return 0;
}

CheckerConfig checker_config(const CommonOpts& opts, const DelayControlProblem& prob) {
    CheckerConfig cfg;
    cfg.tol = opts.tol;
    cfg.budget = static_cast<int>(std::min<long long>(opts.budget, 64));
    cfg.seed = opts.seed;
    auto shared = std::make_shared<DelayControlProblem>(prob);
    cfg.extra_candidates = [shared](const PathPoint& p, std::span<const double> s) {
        std::vector<SampledPath> out;
        out.push_back(greedy_motion(*shared, p, s));
        const auto beam = value_beam(*shared, p, 32, 1);
        out.push_back(integrate_motion(*shared, p, beam.witness));
        return out;
    };
    return cfg;
}

Json report_row(const CriterionReport& rep) {
    Json r;
    r["criterion"] = criterion_name(rep.id);
    r["margin"] = rep.margin;
    r["tol"] = rep.tol;
    r["pass"] = rep.pass;
    r["one_sided"] = rep.one_sided;
    r["vacuous"] = rep.vacuous;
    r["s"] = rep.s;
    r["budget"] = rep.budget;
    r["seed"] = rep.seed;
    if (!rep.note.empty()) r["note"] = rep.note;
    return r;
}

int run_check_solution(const CommonOpts& opts, const std::string& problem_file,
                       const std::string& phi_kind, const std::string& points_file,
                       const std::string& criteria_csv, double phi_drift) {
    DelayControlProblem prob = parse_problem(load_json_file(problem_file));
    prob.grid = apply_dt_override(prob.grid, opts.dt_override);
    auto points = parse_points(load_json_file(points_file));
    for (auto& p : points) require_same_grid(p.grid(), prob.grid, "/points");

    std::string kind = phi_kind;
    if (kind.rfind("builtin:", 0) == 0) kind = kind.substr(8);
    Functional phi = problem_value_functional(prob, kind, opts.budget);
    if (phi_drift != 0.0) {
        Functional base = phi;
        phi.eval = [base, phi_drift](const PathPoint& p) {
            return base(p) + phi_drift * (p.grid().T - p.t());
        };
        phi.name += phi_drift > 0 ? "_plus" : "_minus";
    }

    auto shared = std::make_shared<DelayControlProblem>(prob);
    HamiltonianSpec H;
    H.c_H = prob.c_fchi;
    H.name = "bellman:" + prob.name;
    H.eval = [shared](const PathPoint& p, std::span<const double> s) {
        return bellman_hamiltonian(*shared, p, s);
    };

    const CheckerConfig cfg = checker_config(opts, prob);
    std::vector<CriterionId> criteria;
    std::stringstream ss(criteria_csv);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (!token.empty()) criteria.push_back(criterion_from_name(token));
    }
    if (criteria.empty()) throw SchemaError("/criteria", "empty criteria list");

    const auto s_grid = default_s_grid(prob.grid.n, H.c_H, opts.seed);
    Json j = envelope("check-solution", opts);
    j["phi"] = phi.name;
    Json rows = Json::array();
    bool all_pass = true;
    std::string first_fail;
    for (size_t pi = 0; pi < points.size(); ++pi) {
        const PathPoint& p = points[pi];
        for (CriterionId id : criteria) {
            std::vector<CriterionReport> reps;
            switch (id) {
                case CriterionId::UV:
                    reps.push_back(check_upper_viscosity(phi, H, p, cfg));
                    break;
                case CriterionId::LV:
                    reps.push_back(check_lower_viscosity(phi, H, p, cfg));
                    break;
                default:
                    for (const auto& s : s_grid) {
                        const int tau = std::min(
                            prob.grid.steps_T,
                            p.t_index() + std::max(4, prob.grid.steps_T / 4));
                        switch (id) {
                            case CriterionId::UM:
                                reps.push_back(
                                    check_upper_minimax(phi, H, p, tau, s, cfg));
                                break;
                            case CriterionId::LM:
                                reps.push_back(
                                    check_lower_minimax(phi, H, p, tau, s, cfg));
                                break;
                            case CriterionId::UM_MULTI:
                                reps.push_back(check_um_multi(phi, H, p, s, cfg));
                                break;
                            case CriterionId::UV_INFEXT:
                                reps.push_back(check_uv_infext(phi, H, p, s, cfg));
                                break;
                            case CriterionId::UM_LIP:
                                reps.push_back(check_um_lip(phi, H, p, s, cfg));
                                break;
                            case CriterionId::UM_D0:
                                reps.push_back(check_um_d0(phi, H, p, s, cfg));
                                break;
                            default:
                                break;
                        }
                    }
            }
            for (auto& rep : reps) {
                Json row = report_row(rep);
                row["point"] = pi;
                if (!rep.pass && all_pass) {
                    all_pass = false;
                    first_fail = "/rows/" + std::to_string(rows.size());
                }
                rows.push_back(std::move(row));
            }
        }
    }
    j["rows"] = std::move(rows);
    j["all_pass"] = all_pass;
    write_output(opts, j);
    if (!all_pass) {
        std::cerr << "check-solution: first failing report at " << first_fail << "\n";
        return 1;
    }
    return 0;
}

int run_cross_validate(const CommonOpts& opts, const std::string& problem_file,
                       const std::string& phi_kind, const std::string& points_file,
                       double phi_drift) {
    DelayControlProblem prob = parse_problem(load_json_file(problem_file));
    prob.grid = apply_dt_override(prob.grid, opts.dt_override);
    auto points = parse_points(load_json_file(points_file));
    for (auto& p : points) require_same_grid(p.grid(), prob.grid, "/points");

    std::string kind = phi_kind;
    if (kind.rfind("builtin:", 0) == 0) kind = kind.substr(8);
    Functional phi = problem_value_functional(prob, kind, opts.budget);
    if (phi_drift != 0.0) {
        Functional base = phi;
        phi.eval = [base, phi_drift](const PathPoint& p) {
            return base(p) + phi_drift * (p.grid().T - p.t());
        };
    }
    auto shared = std::make_shared<DelayControlProblem>(prob);
    HamiltonianSpec H;
    H.c_H = prob.c_fchi;
    H.name = "bellman:" + prob.name;
    H.eval = [shared](const PathPoint& p, std::span<const double> s) {
        return bellman_hamiltonian(*shared, p, s);
    };
    const CheckerConfig cfg = checker_config(opts, prob);
    const auto s_grid = default_s_grid(prob.grid.n, H.c_H, opts.seed);
    std::vector<int> taus{prob.grid.steps_T / 2, prob.grid.steps_T};

    const auto cv = cross_validate(phi, H, points, s_grid, taus, cfg);
    Json j = envelope("cross-validate", opts);
    Json rows = Json::array();
    for (const auto& row : cv.rows) {
        Json r = report_row(row.report);
        r["point"] = row.point;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    Json verdicts;
    for (const auto& [id, pass] : cv.verdict) verdicts[criterion_name(id)] = pass;
    j["verdict"] = std::move(verdicts);
    Json worst;
    for (const auto& [id, m] : cv.worst_margin) worst[criterion_name(id)] = m;
    j["worst_margin"] = std::move(worst);

    // internal consistency: the margin ordering chain must hold row-wise
    bool chain_ok = true;
    for (const auto& row : cv.rows) {
        if (row.report.id != CriterionId::UM_MULTI) continue;
        for (const auto& other : cv.rows) {
            if (other.point != row.point || other.report.s != row.report.s) continue;
            if (other.report.id == CriterionId::UM_D0 ||
                other.report.id == CriterionId::UV_INFEXT)
                chain_ok =
                    chain_ok && other.report.margin <= row.report.margin + 1e-9;
        }
    }
    j["ordering_chain_ok"] = chain_ok;
    write_output(opts, j);
    if (!chain_ok) {
        std::cerr << "cross-validate: /ordering_chain_ok failed\n";
        return 1;
    }
    return 0;
}

int run_bp_demo(const CommonOpts& opts, const std::string& set_file, double alpha,
                double kappa) {
    const Json sj = load_json_file(set_file);
    std::vector<PathPoint> pts;
    if (sj.contains("points")) {
        pts = parse_points(sj);
    } else if (sj.contains("grid") && sj.contains("count")) {
        const GridSpec g = parse_grid(sj["grid"], "/grid");
        const int count = sj["count"].get<int>();
        for (int j = 0; j < count; ++j) {
            Rng rng = Rng::derived(opts.seed, 70, j);
            const int ti = rng.uniform_int(0, g.steps_T - 1);
            std::vector<double> vals(static_cast<size_t>(g.nodes_at(ti)) * g.n);
            const double amp =
                alpha / std::sqrt(static_cast<double>(g.n)) * rng.uniform(0.2, 1.0);
            std::vector<double> cur(g.n);
            for (int i = 0; i < g.n; ++i) cur[i] = rng.uniform(-amp, amp);
            for (int k = 0; k < g.nodes_at(ti); ++k)
                for (int i = 0; i < g.n; ++i) {
                    cur[i] = std::clamp(cur[i] + rng.uniform(-amp, amp) * 8.0 * g.dt,
                                        -amp, amp);
                    vals[static_cast<size_t>(k) * g.n + i] = cur[i];
                }
            pts.push_back(SampledPath::from_values(g, ti, std::move(vals)));
        }
    } else {
        throw SchemaError("/", "set file needs 'points' or 'grid'+'count'");
    }
    const DiscreteSet X = DiscreteSet::make(std::move(pts), alpha);

    // demo objective: squared strong distance to the first set element
    const PathPoint target = X.points[X.points.size() / 2];
    const Functional phi{[&target](const PathPoint& p) {
                             const double d = rho_inf(p, target);
                             return d * d;
                         },
                         kContinuous, "sq_distance"};
    const auto res = bp_minimize(phi, X, kappa, 8);
    const GaugeParams gauge = GaugeParams::make(alpha, X.points.front().grid().T);

    Json j = envelope("bp-demo", opts);
    j["alpha"] = alpha;
    j["kappa"] = kappa;
    j["minimizer_index"] = res.minimizer_index;
    j["anchors"] = res.psi.anchors.size();
    j["anchor_gauge"] = res.anchor_gauge;
    j["min_value"] = res.min_value;

    bool ok = true;
    std::string fail;
    for (size_t k = 0; k < res.anchor_gauge.size(); ++k)
        if (res.anchor_gauge[k] > kappa / std::ldexp(1.0, static_cast<int>(k))) {
            ok = false;
            fail = "/anchor_gauge/" + std::to_string(k);
        }
    double psi_max = 0.0;
    for (const auto& q : X.points) {
        const double v = res.psi.eval(q);
        psi_max = std::max(psi_max, v);
        if (v < 0.0 || v > 2.0 * gauge.cap() * kappa + 1e-12) {
            ok = false;
            fail = "/psi_bound";
        }
        if (phi(res.minimizer) + res.psi.eval(res.minimizer) >
            phi(q) + res.psi.eval(q) + 1e-12) {
            ok = false;
            fail = "/exact_minimality";
        }
    }
    const auto [dt_part, grad] = res.psi.ci_derivatives(res.minimizer);
    double gn = 0.0;
    for (double x : grad) gn += x * x;
    j["psi_max"] = psi_max;
    j["psi_bound"] = 2.0 * gauge.cap() * kappa;
    j["dt_derivative"] = dt_part;
    j["dt_bound"] = 4.0 * gauge.horizon * kappa;
    j["grad_norm"] = std::sqrt(gn);
    j["grad_bound"] = 8.0 * alpha * kappa;
    if (std::abs(dt_part) > 4.0 * gauge.horizon * kappa) {
        ok = false;
        fail = "/dt_derivative";
    }
    if (std::sqrt(gn) > 8.0 * alpha * kappa) {
        ok = false;
        fail = "/grad_norm";
    }
    j["all_clauses"] = ok;
    write_output(opts, j);
    if (!ok) {
        std::cerr << "bp-demo: clause failed at " << fail << "\n";
        return 1;
    }
    return 0;
}

int run_subgrad_search(const CommonOpts& opts, const std::string& phi_kind,
                       const std::string& point_file, const std::string& l_spec,
                       double eta) {
    const SampledPath point = parse_path(load_json_file(point_file));
    const int n = point.grid().n;

    Functional phi;
    phi.tags = kContinuous | kRho1LowerSemicontinuous | kLocallyLipschitz;
    std::string kind = phi_kind;
    if (kind.rfind("builtin:", 0) == 0) kind = kind.substr(8);
    if (kind == "time") {
        phi.name = "time";
        phi.eval = [](const PathPoint& p) { return p.t(); };
    } else if (kind == "neg_time") {
        phi.name = "neg_time";
        phi.eval = [](const PathPoint& p) { return -p.t(); };
    } else if (kind.rfind("affine:", 0) == 0) {
        // affine:a,M evaluates a * sum x_i(t) + M t
        const auto rest = kind.substr(7);
        const auto comma = rest.find(',');
        if (comma == std::string::npos)
            throw SchemaError("/phi", "affine builtin needs 'affine:a,M'");
        const double a = std::stod(rest.substr(0, comma));
        const double M = std::stod(rest.substr(comma + 1));
        phi.name = "affine";
        phi.eval = [a, M](const PathPoint& p) {
            double v = M * p.t();
            for (double x : p.current()) v += a * x;
            return v;
        };
    } else {
        throw SchemaError("/phi", "unknown builtin '" + kind + "'");
    }

    DirectionSet L = DirectionSet::ball(n, 1.0);
    if (l_spec.rfind("ball:", 0) == 0) {
        L = DirectionSet::ball(n, std::stod(l_spec.substr(5)));
    } else if (l_spec == "zero") {
        L = DirectionSet::polytope({std::vector<double>(n, 0.0)});
    } else {
        throw SchemaError("/L", "expected 'ball:<r>' or 'zero'");
    }

    SubgradParams prm;
    prm.eta = eta;
    prm.seed = opts.seed;
    const auto res = subgradient_search(phi, point, L, prm);

    Json j = envelope("subgrad-search", opts);
    j["phi"] = phi.name;
    j["refused"] = res.refused;
    j["one_sided"] = true;
    if (res.refused) {
        j["refusal"] = res.refusal;
        j["d0_estimate"] = res.d0_estimate;
        write_output(opts, j);
        return 0;  // refusal is the intended precondition-gate outcome
    }
    j["d0_estimate"] = res.d0_estimate;
    j["eps_star"] = res.eps_star;
    j["delta"] = res.delta;
    j["lambda_L"] = res.lambda_L;
    j["beta"] = res.beta;
    j["k_used"] = res.k_used;
    j["p0"] = res.p0;
    j["p"] = res.p;
    j["margin"] = res.margin;
    j["rho_to_start"] = res.rho_to_start;
    j["membership"] = res.membership;
    j["membership_tol"] = res.membership_tol;
    Json diags = Json::array();
    for (const auto& d : res.diagnostics) {
        Json dj;
        dj["k"] = d.k;
        dj["quad_dist"] = d.quad_dist;
        dj["quad_bound"] = d.quad_bound;
        dj["time_gap_sq"] = d.time_gap_sq;
        dj["time_bound"] = d.time_bound;
        dj["thresholds_met"] = d.thresholds_met;
        dj["margin"] = d.margin;
        diags.push_back(std::move(dj));
    }
    j["diagnostics"] = std::move(diags);
    write_output(opts, j);
    if (!res.success()) {
        std::cerr << "subgrad-search: /margin or /membership failed\n";
        return 1;
    }
    return 0;
}

int run_regularity(const CommonOpts& opts, const std::string& problem_file,
                   double alpha) {
    DelayControlProblem prob = parse_problem(load_json_file(problem_file));
    prob.grid = apply_dt_override(prob.grid, opts.dt_override);
    const auto rep = regularity_report(
        prob, alpha, static_cast<int>(std::min<long long>(opts.budget, 64)),
        opts.seed);
    Json j = envelope("regularity", opts);
    j["alpha"] = rep.alpha;
    j["alpha_star_empirical"] = rep.alpha_star_empirical;
    j["alpha_star_gronwall"] = rep.alpha_star_gronwall;
    j["lambda_fit"] = rep.lambda_fit;
    j["sigma_rho1_lipschitz"] = rep.sigma_rho1_lipschitz;
    Json rows = Json::array();
    for (const auto& r : rep.modulus) {
        Json row;
        row["rho1"] = r.rho1;
        row["dvalue"] = r.dvalue;
        rows.push_back(std::move(row));
    }
    j["modulus"] = std::move(rows);
    write_output(opts, j);
    if (rep.alpha_star_empirical > rep.alpha_star_gronwall + 1e-12) {
        std::cerr << "regularity: /alpha_star_empirical escapes the envelope\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"path-dependent Hamilton-Jacobi toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;

    std::string paths_file;
    auto* gauge_cmd =
        app.add_subcommand("gauge-check", "margins of the norm surrogate");
    gauge_cmd->add_option("--paths", paths_file, "paths JSON file")->required();
    add_common(gauge_cmd, &opts);

    double probe_l = 2.0;
    auto* probe_cmd =
        app.add_subcommand("counterexample", "direction dependence probe");
    probe_cmd->add_option("--l", probe_l, "slope parameter (> 1, or 0)");
    add_common(probe_cmd, &opts);

    std::string problem_file, point_file, mode = "exhaustive";
    auto* value_cmd = app.add_subcommand("value", "value functional at a point");
    value_cmd->add_option("--problem", problem_file, "problem JSON")->required();
    value_cmd->add_option("--point", point_file, "start point JSON")->required();
    value_cmd->add_option("--mode", mode, "exhaustive | beam");
    std::string out_path_csv;
    value_cmd->add_option("--out-path", out_path_csv,
                          "write the witness motion as CSV");
    add_common(value_cmd, &opts);

    double tau = 0.0;
    auto* dpp_cmd = app.add_subcommand("dpp", "dynamic-programming residual");
    dpp_cmd->add_option("--problem", problem_file, "problem JSON")->required();
    dpp_cmd->add_option("--point", point_file, "start point JSON")->required();
    dpp_cmd->add_option("--tau", tau, "split time")->required();
    add_common(dpp_cmd, &opts);

    std::string phi_kind = "builtin:value", points_file, criteria = "UM,LM,UV,LV";
    double phi_drift = 0.0;
    auto* check_cmd = app.add_subcommand("check-solution", "criterion margins");
    check_cmd->add_option("--problem", problem_file, "problem JSON")->required();
    check_cmd->add_option("--phi", phi_kind, "functional builtin");
    check_cmd->add_option("--points", points_file, "points JSON")->required();
    check_cmd->add_option("--criteria", criteria, "comma-separated criteria");
    check_cmd->add_option("--phi-drift", phi_drift, "adds drift * (T - t)");
    add_common(check_cmd, &opts);

    auto* cross_cmd = app.add_subcommand("cross-validate", "full criterion matrix");
    cross_cmd->add_option("--problem", problem_file, "problem JSON")->required();
    cross_cmd->add_option("--phi", phi_kind, "functional builtin");
    cross_cmd->add_option("--points", points_file, "points JSON")->required();
    cross_cmd->add_option("--phi-drift", phi_drift, "adds drift * (T - t)");
    add_common(cross_cmd, &opts);

    std::string set_file;
    double alpha = 1.0, kappa = 0.25;
    auto* bp_cmd = app.add_subcommand("bp-demo", "perturbed minimization demo");
    bp_cmd->add_option("--set", set_file, "discrete set JSON")->required();
    bp_cmd->add_option("--alpha", alpha, "containing radius");
    bp_cmd->add_option("--kappa", kappa, "perturbation scale in (0, 1]");
    add_common(bp_cmd, &opts);

    std::string l_spec = "ball:1";
    double eta = 0.1;
    auto* sg_cmd = app.add_subcommand("subgrad-search", "subgradient search");
    sg_cmd->add_option("--phi", phi_kind, "functional builtin")->required();
    sg_cmd->add_option("--point", point_file, "start point JSON")->required();
    sg_cmd->add_option("--L", l_spec, "direction set: ball:<r> | zero");
    sg_cmd->add_option("--eta", eta, "neighborhood radius");
    add_common(sg_cmd, &opts);

    auto* reg_cmd = app.add_subcommand("regularity", "growth and modulus report");
    reg_cmd->add_option("--problem", problem_file, "problem JSON")->required();
    reg_cmd->add_option("--alpha", alpha, "start radius");
    add_common(reg_cmd, &opts);

    CLI11_PARSE(app, argc, argv);
    set_worker_count(opts.workers);

    try {
        if (gauge_cmd->parsed()) return run_gauge_check(opts, paths_file);
        if (probe_cmd->parsed()) return run_counterexample(opts, probe_l);
        if (value_cmd->parsed())
            return run_value(opts, problem_file, point_file, mode, out_path_csv);
        if (dpp_cmd->parsed()) return run_dpp(opts, problem_file, point_file, tau);
        if (check_cmd->parsed())
            return run_check_solution(opts, problem_file, phi_kind, points_file,
                                      criteria, phi_drift);
        if (cross_cmd->parsed())
            return run_cross_validate(opts, problem_file, phi_kind, points_file,
                                      phi_drift);
        if (bp_cmd->parsed()) return run_bp_demo(opts, set_file, alpha, kappa);
        if (sg_cmd->parsed())
            return run_subgrad_search(opts, phi_kind, point_file, l_spec, eta);
        if (reg_cmd->parsed()) return run_regularity(opts, problem_file, alpha);
    } catch (const SchemaError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
