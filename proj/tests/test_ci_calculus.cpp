#include <doctest.h>

#include <cmath>
#include <memory>

#include "pathhj/ci_calculus.hpp"
#include "pathhj/gauge.hpp"
#include "pathhj/metrics.hpp"
#include "test_helpers.hpp"

using namespace pathhj;
using pathhj::testing::random_path;

namespace {

const GridSpec kGrid = GridSpec::make(0.5, 1.0, 1.0 / 256, 1);

Functional time_functional() {
    return {[](const PathPoint& p) { return p.t(); }, kContinuous | kLocallyLipschitz,
            "time"};
}

Functional affine_functional(std::vector<double> a, double b = 0.0) {
    return {[a, b](const PathPoint& p) {
                double v = b * p.t();
                auto xt = p.current();
                for (size_t i = 0; i < a.size(); ++i) v += a[i] * xt[i];
                return v;
            },
            kContinuous | kRho1LowerSemicontinuous | kRho1UpperSemicontinuous |
                kLocallyLipschitz,
            "affine"};
}

/// Ten rho_1-locally-Lipschitz functionals used across the derivative tests.
std::vector<std::pair<Functional, GridSpec>> lipschitz_battery() {
    std::vector<std::pair<Functional, GridSpec>> out;
    const GridSpec g1 = GridSpec::make(0.5, 1.0, 1.0 / 256, 1);
    const GridSpec g2 = GridSpec::make(0.5, 1.0, 1.0 / 256, 2);
    auto tag = kContinuous | kRho1LowerSemicontinuous | kRho1UpperSemicontinuous |
               kLocallyLipschitz;
    out.push_back({affine_functional({0.8}, 0.3), g1});
    out.push_back({affine_functional({-1.2}, 0.0), g1});
    out.push_back({{[](const PathPoint& p) { return std::abs(p.current()[0]); }, tag,
                    "abs_state"},
                   g1});
    out.push_back({{[](const PathPoint& p) {
                        return std::max(0.0, p.current()[0] - 0.25);
                    },
                    tag, "hinge"},
                   g1});
    out.push_back({{[](const PathPoint& p) {
                        // integral of ||x|| over the stored history
                        std::vector<double> samples(p.node_count());
                        for (int k = 0; k < p.node_count(); ++k)
                            samples[k] = std::abs(p.node(k)[0]);
                        return integrate_scalar(samples, p.grid().dt);
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
                        auto xt = p.current();
                        return std::hypot(xt[0], xt[1]);
                    },
                    tag, "norm_state"},
                   g2});
    out.push_back({{[](const PathPoint& p) {
                        auto xt = p.current();
                        return 0.5 * xt[0] - 0.9 * xt[1] + 0.2 * p.t();
                    },
                    tag, "affine2"},
                   g2});
    const GridSpec g1c = g1;
    const double qv[1] = {0.3};
    auto q = std::make_shared<PathPoint>(SampledPath::constant(g1c, g1c.steps_T / 2, qv));
    out.push_back({{[q](const PathPoint& p) { return quad_distance(p, *q); }, tag,
                    "quad_to_anchor"},
                   g1});
    return out;
}

}  // namespace

TEST_CASE("linear shift") {
    Rng rng(2);
    const PathPoint p = random_path(kGrid, 30, 1.0, rng);
    const Functional zero{[](const PathPoint&) { return 0.0; }, 0, "zero"};
    const Functional shifted = linear_shift(zero, {2.0});
    CHECK(shifted(p) == doctest::Approx(-2.0 * p.current()[0]));

    const Functional aff = affine_functional({1.3}, 0.7);
    const Functional twice = linear_shift(linear_shift(aff, {0.9}), {-0.9});
    CHECK(twice(p) == doctest::Approx(aff(p)).epsilon(1e-15));

    const Functional same = linear_shift(aff, {0.0});
    CHECK(same(p) == aff(p));
}

TEST_CASE("right derivatives along extensions") {
    const auto offsets = dyadic_offsets(kGrid, 0);
    const double x0[1] = {0.5};
    const PathPoint p = SampledPath::constant(kGrid, 0, x0);

    // phi = t has quotient 1 along any extension
    Rng rng(3);
    std::vector<double> derivs(kGrid.steps_T);
    for (double& d : derivs) d = rng.uniform(-2.0, 2.0);
    const SampledPath wild = make_extension(p, derivs);
    const auto est = quotient_trace(time_functional(), p, wild, offsets);
    CHECK(est.lower_value() == doctest::Approx(1.0));
    CHECK(est.upper_value() == doctest::Approx(1.0));

    // affine functional along the straight extension: exactly <a, l>
    const Functional aff = affine_functional({-0.7});
    const double l[1] = {1.3};
    CHECK(dir_deriv_single(aff, p, l) == doctest::Approx(-0.7 * 1.3));

    // the smooth surrogate at a positive constant path: gradient 2c
    const Functional vfun{[](const PathPoint& q) { return smooth_norm2(q); },
                          kContinuous, "surrogate"};
    CHECK(dir_deriv_single(vfun, p, l) == doctest::Approx(2.0 * 0.5 * 1.3).epsilon(1e-3));

    CHECK_THROWS_AS(quotient_trace(aff, p, wild, std::span<const int>{}),
                    std::invalid_argument);
}

TEST_CASE("running min is monotone under schedule refinement") {
    Rng rng(4);
    const PathPoint p = random_path(kGrid, 10, 1.0, rng);
    const Functional f{[](const PathPoint& q) {
                           return std::sin(7.0 * q.t()) * q.current()[0];
                       },
                       kContinuous, "wiggly"};
    const double l[1] = {0.8};
    const SampledPath ext = line_extension(p, l);
    const auto full = dyadic_offsets(kGrid, p.t_index());
    for (size_t cut = 1; cut <= full.size(); ++cut) {
        std::vector<int> partial(full.begin(), full.begin() + cut);
        const auto est = quotient_trace(f, p, ext, partial);
        const auto whole = quotient_trace(f, p, ext, full);
        CHECK(whole.running_min <= est.running_min + 1e-15);
        CHECK(whole.running_max >= est.running_max - 1e-15);
    }
}

TEST_CASE("smooth consistency of single-direction derivatives") {
    // surrogate, quadratic distance, and affine: estimator vs closed form
    const GridSpec g = kGrid;
    Rng rng(5);
    const double qv[1] = {-0.4};
    const PathPoint anchor = SampledPath::constant(g, g.steps_T / 4, qv);
    int checked = 0;
    for (int trial = 0; trial < 50; ++trial) {
        // paths whose sup-norm is attained well away from the endpoint keep
        // the surrogate smooth along short extensions
        std::vector<double> vals(g.nodes_at(0));
        for (size_t k = 0; k < vals.size(); ++k)
            vals[k] = 1.1 + 0.1 * std::sin(0.3 * static_cast<double>(k) + trial);
        vals.back() = rng.uniform(0.3, 0.8);
        const PathPoint p = SampledPath::from_values(g, 0, std::move(vals));
        const double l[1] = {rng.uniform(-1.0, 1.0)};

        const Functional vfun{[](const PathPoint& q) { return smooth_norm2(q); },
                              kContinuous, "surrogate"};
        const double v_expected = smooth_norm2_dt(p) + smooth_norm2_grad(p)[0] * l[0];
        CHECK(dir_deriv_single(vfun, p, l) == doctest::Approx(v_expected).epsilon(1e-3));

        const Functional psi{[&anchor](const PathPoint& q) {
                                 return quad_distance(q, anchor);
                             },
                             kContinuous, "quad"};
        const double psi_expected = quad_distance_grad1(p, anchor)[0] * l[0];
        CHECK(dir_deriv_single(psi, p, l) ==
              doctest::Approx(psi_expected).epsilon(1e-3));

        const Functional aff = affine_functional({0.9}, -0.2);
        CHECK(dir_deriv_single(aff, p, l) == doctest::Approx(-0.2 + 0.9 * l[0]));
        ++checked;
    }
    CHECK(checked == 50);
}

TEST_CASE("multi-direction derivative") {
    const double x0[1] = {0.2};
    const PathPoint p = SampledPath::constant(kGrid, 0, x0);

    // phi = t: quotient 1 whatever the tube
    const auto t_est = dir_deriv_multi(time_functional(), p,
                                       DirectionSet::ball(1, 0.5), 32, 11);
    CHECK(t_est.estimate == doctest::Approx(1.0));

    // affine over a ball: true infimum is -r |a|
    const Functional aff = affine_functional({1.4});
    const auto est = dir_deriv_multi(aff, p, DirectionSet::ball(1, 0.75), 32, 11);
    CHECK(est.estimate == doctest::Approx(-0.75 * 1.4).epsilon(1e-3));
    CHECK(est.one_sided);

    CHECK_THROWS_AS(dir_deriv_multi(aff, p, DirectionSet::ball(1, 1.0), 0, 1),
                    std::invalid_argument);
}

TEST_CASE("lipschitz reduction: multi equals dense single-direction minimum") {
    for (auto& [phi, g] : lipschitz_battery()) {
        Rng rng(100 + std::hash<std::string>{}(phi.name) % 97);
        const PathPoint p = random_path(g, g.steps_T / 3, 0.9, rng);
        const double radius = 0.8;
        const DirectionSet L = DirectionSet::ball(g.n, radius);
        const auto multi = dir_deriv_multi(phi, p, L, 64, 13);

        // dense direction grid on L
        double dense_min = std::numeric_limits<double>::infinity();
        const auto offsets = dyadic_offsets(g, p.t_index());
        auto probe = [&](std::vector<double> l) {
            dense_min = std::min(dense_min, dir_deriv_single(phi, p, l, offsets));
        };
        if (g.n == 1) {
            for (int k = -16; k <= 16; ++k) probe({radius * k / 16.0});
        } else {
            for (int k = 0; k < 64; ++k) {
                const double a = 2.0 * M_PI * k / 64.0;
                for (double r : {radius, 0.5 * radius, 0.0})
                    probe({r * std::cos(a), r * std::sin(a)});
            }
        }
        CHECK(std::abs(multi.estimate - dense_min) <= 2e-3);
    }
}

TEST_CASE("joint derivative sits below the multi-direction one") {
    for (auto& [phi, g] : lipschitz_battery()) {
        Rng rng(200 + std::hash<std::string>{}(phi.name) % 89);
        const PathPoint p = random_path(g, g.steps_T / 4, 1.1, rng);
        const DirectionSet L = DirectionSet::ball(g.n, 1.0);
        const auto scan = scan_directions(phi, p, L, 48, 17);
        CHECK(scan.joint.estimate <= scan.multi.estimate + 1e-9);
    }
    // sharp case: phi = t gives exactly 1 for both
    const double x0[1] = {0.0};
    const PathPoint p = SampledPath::constant(kGrid, 0, x0);
    const auto scan = scan_directions(time_functional(), p, DirectionSet::ball(1, 1.0),
                                      32, 19);
    CHECK(scan.joint.estimate == doctest::Approx(1.0));
}

TEST_CASE("lipschitz reduction for the joint variant") {
    // for Lipschitz functionals the joint value also equals the dense
    // single-direction minimum
    const Functional aff = affine_functional({-0.6}, 0.4);
    const double x0[1] = {0.1};
    const PathPoint p = SampledPath::constant(kGrid, 0, x0);
    const auto scan = scan_directions(aff, p, DirectionSet::ball(1, 0.5), 48, 23);
    const double expected = 0.4 - 0.5 * 0.6;
    CHECK(scan.joint.estimate == doctest::Approx(expected).epsilon(2e-3));
    CHECK(scan.multi.estimate == doctest::Approx(expected).epsilon(2e-3));
}

TEST_CASE("subdifferential approximation") {
    const double x0[1] = {0.35};
    const PathPoint p = SampledPath::constant(kGrid, 0, x0);
    const auto l_grid = default_l_grid(1, 2.0, 31);

    // smooth affine case: (b, a) accepted, perturbations rejected
    const Functional aff = affine_functional({1.1}, 0.6);
    const auto sub = approx_subdifferential(aff, p, l_grid, 1e-6);
    CHECK(sub.contains(0.6, std::vector<double>{1.1}));
    CHECK(sub.contains(0.4, std::vector<double>{1.1}));   // p0 below the slope
    CHECK_FALSE(sub.contains(0.7, std::vector<double>{1.1}));
    CHECK_FALSE(sub.contains(0.6, std::vector<double>{1.3}));
    CHECK_FALSE(sub.contains(0.1, std::vector<double>{2.0}));
    // outer approximation: a pair violating no constraint on the grid is kept
    CHECK(sub.contains(0.1, std::vector<double>{1.3}));

    // |x(t)| at x(t) = 0 accepts the full unit interval of slopes
    const double zero[1] = {0.0};
    const PathPoint pz = SampledPath::constant(kGrid, 0, zero);
    const Functional absf{[](const PathPoint& q) { return std::abs(q.current()[0]); },
                          kContinuous | kLocallyLipschitz, "abs"};
    const auto sub0 = approx_subdifferential(absf, pz, l_grid, 1e-9);
    for (double slope : {-1.0, -0.5, 0.0, 0.5, 1.0})
        CHECK(sub0.contains(-1e-12, std::vector<double>{slope}));
    CHECK_FALSE(sub0.contains(0.2, std::vector<double>{0.0}));
    CHECK_FALSE(sub0.contains(0.0, std::vector<double>{1.4}));

    // untagged functionals are rejected
    const Functional untagged{[](const PathPoint&) { return 0.0; }, 0, "untagged"};
    CHECK_THROWS_AS(approx_subdifferential(untagged, p, l_grid, 1e-9),
                    std::invalid_argument);
}

TEST_CASE("super/subdifferential duality") {
    Rng rng(37);
    const auto l_grid = default_l_grid(1, 1.5, 41);
    for (auto& [phi, g] : lipschitz_battery()) {
        if (g.n != 1) continue;
        const PathPoint p = random_path(g, g.steps_T / 5, 0.7, rng);
        Functional neg = phi;
        neg.eval = [base = phi.eval](const PathPoint& q) { return -base(q); };
        const auto sup = approx_superdifferential(phi, p, l_grid, 1e-9);
        const auto sub_neg = approx_subdifferential(neg, p, l_grid, 1e-9);
        // (q0, q) in the upper set iff (-q0, -q) in the lower set of -phi
        for (double q0 : {-0.5, 0.0, 0.5})
            for (double q1 : {-1.0, 0.0, 1.0}) {
                const bool a = sup.contains(q0, std::vector<double>{q1});
                const bool b = sub_neg.contains(-q0, std::vector<double>{-q1});
                CHECK(a == b);
            }
    }
}

TEST_CASE("gradient candidates pass membership for smooth functionals") {
    const double x0[1] = {0.45};
    const PathPoint p = SampledPath::constant(kGrid, 20, x0);
    const Functional aff = affine_functional({-0.8}, 1.2);
    const auto cands = gradient_candidates(aff, p, 0.5);
    const auto sub = approx_subdifferential(aff, p, default_l_grid(1, 1.5, 43), 1e-6);
    int accepted = 0;
    for (const auto& [p0, pv] : cands)
        if (sub.contains(p0, pv)) ++accepted;
    CHECK(accepted >= 1);
}
