#include <doctest.h>

#include <cmath>

#include "pathhj/metrics.hpp"
#include "pathhj/path.hpp"
#include "test_helpers.hpp"

using namespace pathhj;
using pathhj::testing::random_path;

namespace {
const GridSpec kGrid = GridSpec::make(1.0, 1.0, 1.0 / 64, 1);
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(GridSpec::make(0.0, 1.0, 0.25, 1), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec::make(1.0, 1.0, 0.3, 1), std::invalid_argument);   // h/dt
    CHECK_THROWS_AS(GridSpec::make(1.0, 1.0, 0.5, 1), std::invalid_argument);   // dt > T/4
    CHECK_THROWS_AS(GridSpec::make(1.0, 1.0, 0.25, 0), std::invalid_argument);  // n
    const GridSpec g = GridSpec::make(0.5, 1.0, 0.125, 2);
    CHECK(g.steps_h == 4);
    CHECK(g.steps_T == 8);
    CHECK(g.total_nodes() == 13);
    CHECK(g.index_of(0.5) == 4);
    CHECK_THROWS_AS(g.index_of(0.51), std::invalid_argument);
}

TEST_CASE("sup_norm basics") {
    const double zero[1] = {0.0};
    CHECK(sup_norm(SampledPath::constant(kGrid, 0, zero)) == 0.0);
    const double c[1] = {-2.5};
    CHECK(sup_norm(SampledPath::constant(kGrid, 32, c)) == 2.5);
    // x(xi) = xi on [-1, 1]: endpoint max is 1
    std::vector<double> ramp(kGrid.total_nodes());
    for (int k = 0; k < kGrid.total_nodes(); ++k) ramp[k] = kGrid.node_time(k);
    CHECK(sup_norm(SampledPath::from_values(kGrid, kGrid.steps_T, ramp)) ==
          doctest::Approx(1.0));
}

TEST_CASE("constant extension and restriction") {
    const double one[1] = {1.0};
    const PathPoint p0 = SampledPath::constant(kGrid, 0, one);
    const SampledPath full = constant_extension(p0, kGrid.steps_T);
    CHECK(full.node_count() == kGrid.total_nodes());
    for (int k = 0; k < full.node_count(); ++k) CHECK(full.node(k)[0] == 1.0);

    // identity when extending to the current time
    const SampledPath same = constant_extension(p0, 0);
    CHECK(same.node_count() == p0.node_count());
    CHECK_THROWS_AS(constant_extension(full, 0), std::invalid_argument);

    // restrict of an extension round-trips exactly
    Rng rng(3);
    const PathPoint p = random_path(kGrid, 17, 1.5, rng);
    const SampledPath back = restrict_to(constant_extension(p, kGrid.steps_T), 17);
    REQUIRE(back.node_count() == p.node_count());
    for (int k = 0; k < p.node_count(); ++k) CHECK(back.node(k)[0] == p.node(k)[0]);
    CHECK_THROWS_AS(restrict_to(p, 18), std::invalid_argument);
}

TEST_CASE("example path frozen at zero") {
    // y*(xi) = max(xi, 0) restricted to t = 0 then extended to T is the zero path
    std::vector<double> vals(kGrid.total_nodes());
    for (int k = 0; k < kGrid.total_nodes(); ++k)
        vals[k] = std::max(kGrid.node_time(k), 0.0);
    const SampledPath ystar = SampledPath::from_values(kGrid, kGrid.steps_T, vals);
    const SampledPath frozen = constant_extension(restrict_to(ystar, 0), kGrid.steps_T);
    CHECK(sup_norm(frozen) == 0.0);
}

TEST_CASE("restrict then extend freezes a ramp") {
    std::vector<double> vals(kGrid.nodes_at(kGrid.steps_T));
    for (int k = 0; k < static_cast<int>(vals.size()); ++k)
        vals[k] = 0.5 * kGrid.node_time(k) + 0.25;
    const SampledPath ramp = SampledPath::from_values(kGrid, kGrid.steps_T, vals);
    const int cut = 16;
    const SampledPath frozen = constant_extension(restrict_to(ramp, cut), kGrid.steps_T);
    const double expected = 0.5 * kGrid.index_time(cut) + 0.25;
    for (int k = kGrid.steps_h + cut; k < kGrid.total_nodes(); ++k)
        CHECK(frozen.node(k)[0] == doctest::Approx(expected));
    CHECK(frozen.node(4)[0] == ramp.node(4)[0]);
}

TEST_CASE("metric values on constants") {
    const double zero[1] = {0.0}, c[1] = {0.75};
    const PathPoint pz = SampledPath::constant(kGrid, 0, zero);
    const PathPoint pc = SampledPath::constant(kGrid, 0, c);
    CHECK(rho_inf(pz, pz) == 0.0);
    CHECK(rho_inf(pz, pc) == doctest::Approx(0.75));
    // pure time shift of the zero path
    const PathPoint pz_later = SampledPath::constant(kGrid, 8, zero);
    CHECK(rho_inf(pz, pz_later) == doctest::Approx(8.0 / 64));
    // rho_1 on constants: |c| (endpoint) + |c| (T + h) with h = T = 1
    CHECK(rho_1(pz, pz) == 0.0);
    CHECK(rho_1(pz, pc) == doctest::Approx(3 * 0.75));
}

TEST_CASE("metric axioms and comparison on random pairs") {
    const GridSpec g = GridSpec::make(0.5, 1.0, 1.0 / 64, 2);
    const double factor = 1.0 + g.T + g.h;
    for (int trial = 0; trial < 1000; ++trial) {
        Rng rng(1000 + trial);
        const PathPoint a = random_path(g, rng.uniform_int(0, g.steps_T), 2.0, rng);
        const PathPoint b = random_path(g, rng.uniform_int(0, g.steps_T), 2.0, rng);
        const PathPoint c = random_path(g, rng.uniform_int(0, g.steps_T), 2.0, rng);
        const double ab = rho_inf(a, b), ba = rho_inf(b, a);
        CHECK(ab == ba);  // symmetry is exact
        CHECK(rho_1(a, b) == rho_1(b, a));
        CHECK(rho_1(a, b) <= factor * ab + 1e-12);
        CHECK(ab <= rho_inf(a, c) + rho_inf(c, b) + 1e-9);
        CHECK(rho_1(a, b) <= rho_1(a, c) + rho_1(c, b) + 1e-9);
    }
    // identity of indiscernibles on the sampled representation
    Rng rng(7);
    const PathPoint a = random_path(g, 5, 1.0, rng);
    CHECK(rho_inf(a, a) == 0.0);
    CHECK(rho_1(a, a) == 0.0);
}

TEST_CASE("make_extension") {
    const double x0[1] = {0.5};
    const PathPoint p = SampledPath::constant(kGrid, 0, x0);
    const int steps = kGrid.steps_T;

    // zero derivatives give the constant extension
    std::vector<double> zeros(steps, 0.0);
    const SampledPath z0 = make_extension(p, zeros);
    for (int k = 0; k < z0.node_count(); ++k) CHECK(z0.node(k)[0] == 0.5);

    // constant derivative l gives the straight line x(t) + (tau - t) l
    std::vector<double> ls(steps, 2.0);
    const SampledPath zl = make_extension(p, ls);
    for (int k = 0; k <= steps; ++k)
        CHECK(zl.node(kGrid.steps_h + k)[0] ==
              doctest::Approx(0.5 + 2.0 * kGrid.index_time(k)));

    // alternating derivatives make a sawtooth; sup-norm is node-wise
    const GridSpec coarse = GridSpec::make(0.25, 1.0, 0.25, 1);
    const double origin[1] = {0.0};
    std::vector<double> alt = {1.0, -1.0, 1.0, -1.0};
    const SampledPath saw =
        make_extension(SampledPath::constant(coarse, 0, origin), alt);
    CHECK(sup_norm(saw) == doctest::Approx(0.25));

    CHECK_THROWS_AS(make_extension(p, std::vector<double>(steps - 1, 0.0)),
                    std::invalid_argument);

    // Lipschitz bound: |z(a) - z(b)| <= max-step-norm * |a - b| at all node pairs
    Rng rng(11);
    std::vector<double> derivs(steps);
    double lip = 0.0;
    for (double& d : derivs) {
        d = rng.uniform(-3.0, 3.0);
        lip = std::max(lip, std::abs(d));
    }
    const SampledPath z = make_extension(p, derivs);
    for (int a = kGrid.steps_h; a < z.node_count(); ++a)
        for (int b = a + 1; b < z.node_count(); ++b)
            CHECK(std::abs(z.node(a)[0] - z.node(b)[0]) <=
                  lip * (b - a) * kGrid.dt + 1e-12);
}

TEST_CASE("trapezoid integration") {
    std::vector<double> ones(65, 1.0);
    CHECK(integrate_scalar(ones, 1.0 / 64) == doctest::Approx(1.0));
    std::vector<double> lin(65);
    for (int k = 0; k <= 64; ++k) lin[k] = k / 64.0;
    CHECK(integrate_scalar(lin, 1.0 / 64) == doctest::Approx(0.5));
    // f = xi^2 on [0,1] at dt = 1/128: trapezoid within 1e-4 of 1/3
    std::vector<double> sq(129);
    for (int k = 0; k <= 128; ++k) sq[k] = (k / 128.0) * (k / 128.0);
    CHECK(std::abs(integrate_scalar(sq, 1.0 / 128) - 1.0 / 3.0) < 1e-4);
    CHECK_THROWS_AS(integrate_scalar(ones, kGrid, 5, 4), std::invalid_argument);
}

TEST_CASE("G(alpha) membership is monotone in alpha") {
    Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const PathPoint p = random_path(kGrid, rng.uniform_int(0, kGrid.steps_T),
                                        rng.uniform(0.1, 3.0), rng);
        const double s = sup_norm(p);
        CHECK(in_G_alpha(p, s));
        CHECK(in_G_alpha(p, s + 0.5));
        CHECK_FALSE(in_G_alpha(p, s - 1e-6));
    }
}
