#include "pathhj/gauge.hpp"

#include <cmath>
#include <stdexcept>

#include "pathhj/metrics.hpp"

namespace pathhj {

namespace {

constexpr double kZeroSup = 1e-14;  // threshold routing to the zero branch

double norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

void require_interior(const PathPoint& p, const char* where) {
    if (p.t_index() >= p.grid().steps_T)
        throw std::invalid_argument(std::string(where) + ": requires t < T");
}

}  // namespace

GaugeParams GaugeParams::make(double alpha, double horizon) {
    if (!(alpha > 0.0)) throw std::invalid_argument("gauge alpha must be > 0");
    if (!(horizon > 0.0)) throw std::invalid_argument("gauge horizon must be > 0");
    return GaugeParams{alpha, horizon};
}

double smooth_norm2(const PathPoint& p) {
    const double sup = sup_norm(p);
    if (sup < kZeroSup) return 0.0;
    const double S = sup * sup;
    const double cn = current_norm(p);
    const double s = cn * cn;
    const double d = S - s;
    return d * d / S + s;
}

double smooth_norm2_dt(const PathPoint& p) {
    require_interior(p, "smooth_norm2_dt");
    return 0.0;
}

std::vector<double> smooth_norm2_grad(const PathPoint& p) {
    require_interior(p, "smooth_norm2_grad");
    const int n = p.grid().n;
    std::vector<double> g(n, 0.0);
    const double sup = sup_norm(p);
    if (sup < kZeroSup) return g;
    const double S = sup * sup;
    const double cn = current_norm(p);
    const double factor = 2.0 - 4.0 * (S - cn * cn) / S;
    auto xt = p.current();
    for (int i = 0; i < n; ++i) g[i] = factor * xt[i];
    return g;
}

BoundsMargin smooth_norm2_bounds_margin(const PathPoint& p) {
    const double sup = sup_norm(p);
    const double S = sup * sup;
    const double v = smooth_norm2(p);
    const double lo = 0.5 * (3.0 - std::sqrt(5.0));
    return BoundsMargin{v - lo * S, 2.0 * S - v};
}

double smooth_norm2_grad_margin(const PathPoint& p) {
    return 2.0 * current_norm(p) - norm(smooth_norm2_grad(p));
}

double pair_smooth_norm2(const PathPoint& p, const PathPoint& q) {
    require_same_grid(p.grid(), q.grid(), "pair_smooth_norm2");
    return smooth_norm2(difference_path(p, q, p.grid().steps_T));
}

double gauge_kernel(const PathPoint& p, const PathPoint& q, const GaugeParams& g) {
    require_same_grid(p.grid(), q.grid(), "gauge_kernel");
    if (p.t_index() < q.t_index()) return g.cap();
    const double dtau = p.t() - q.t();
    return dtau * dtau + smooth_norm2(difference_path(p, q, p.t_index()));
}

double quad_distance(const PathPoint& p, const PathPoint& q) {
    require_same_grid(p.grid(), q.grid(), "quad_distance");
    const GridSpec& g = p.grid();
    double integ = 0.0;
    auto sq = [&](int k) {
        auto a = p.node_ext(k);
        auto b = q.node_ext(k);
        double s = 0.0;
        for (int i = 0; i < g.n; ++i) {
            const double d = a[i] - b[i];
            s += d * d;
        }
        return s;
    };
    double prev = sq(0);
    for (int k = 1; k < g.total_nodes(); ++k) {
        const double cur = sq(k);
        integ += prev + cur;
        prev = cur;
    }
    integ *= 0.5 * g.dt;
    double head = 0.0;
    auto a = p.current();
    auto b = q.current();
    for (int i = 0; i < g.n; ++i) {
        const double d = a[i] - b[i];
        head += d * d;
    }
    return head + integ;
}

std::vector<double> quad_distance_grad1(const PathPoint& p, const PathPoint& q) {
    require_same_grid(p.grid(), q.grid(), "quad_distance_grad1");
    const GridSpec& g = p.grid();
    const int n = g.n;
    auto xt = p.current();
    std::vector<double> grad(n, 0.0);
    // trapezoid of (x(t) - y(. ^ tau)) over [t, T]; integrand affine between
    // nodes, so this is exact
    const int a_node = g.steps_h + p.t_index();
    const int b_node = g.total_nodes() - 1;
    if (a_node < b_node) {
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            double prev = xt[i] - q.node_ext(a_node)[i];
            for (int k = a_node + 1; k <= b_node; ++k) {
                const double cur = xt[i] - q.node_ext(k)[i];
                s += prev + cur;
                prev = cur;
            }
            grad[i] = g.dt * s;  // 2 * (0.5 * dt * sum)
        }
    }
    auto yt = q.current();
    for (int i = 0; i < n; ++i) grad[i] += 2.0 * (xt[i] - yt[i]);
    return grad;
}

std::vector<double> quad_distance_grad2(const PathPoint& p, const PathPoint& q) {
    return quad_distance_grad1(q, p);
}

ProbeResult direction_dependence_probe(double l, std::span<const double> taus) {
    if (l != 0.0 && l <= 1.0)
        throw std::invalid_argument("probe requires l > 1 (or exactly 0 for the time probe)");
    if (taus.empty()) throw std::invalid_argument("probe: empty offset schedule");

    // one-dimensional instance: t* = 0, x* == 1 on [-h, 0];
    // anchor tau* = 1 with y*(xi) = max(xi, 0); T = 1, dt = 2^-12
    const GridSpec g = GridSpec::make(1.0, 1.0, std::pow(2.0, -12), 1);
    std::vector<double> star_vals(g.nodes_at(0), 1.0);
    const PathPoint start = SampledPath::from_values(g, 0, std::move(star_vals));
    std::vector<double> anchor_vals(static_cast<size_t>(g.total_nodes()));
    for (int k = 0; k < g.total_nodes(); ++k)
        anchor_vals[static_cast<size_t>(k)] = std::max(g.node_time(k), 0.0);
    const PathPoint anchor = SampledPath::from_values(g, g.steps_T, std::move(anchor_vals));

    const double base = pair_smooth_norm2(start, anchor);
    const double dir[1] = {l};
    const SampledPath ext = line_extension(start, dir);

    ProbeResult out;
    for (double tau : taus) {
        const int idx = g.index_of(tau);
        if (idx <= 0) throw std::invalid_argument("probe: tau must be a positive grid node");
        const double v = pair_smooth_norm2(restrict_to(ext, idx), anchor);
        const double quotient = (v - base) / g.index_time(idx);
        out.taus.push_back(g.index_time(idx));
        out.quotients.push_back(l == 0.0 ? quotient : quotient / l);
    }
    const size_t m = out.taus.size();
    if (m >= 2 && out.taus[m - 2] != out.taus[m - 1]) {
        const double ta = out.taus[m - 2], qa = out.quotients[m - 2];
        const double tb = out.taus[m - 1], qb = out.quotients[m - 1];
        out.limit = (qb * ta - qa * tb) / (ta - tb);
    } else {
        out.limit = out.quotients.back();
    }
    return out;
}

ProbeResult direction_dependence_probe(double l) {
    std::vector<double> taus;
    for (int k = 4; k <= 12; ++k) taus.push_back(std::pow(2.0, -k));
    return direction_dependence_probe(l, taus);
}

}  // namespace pathhj
