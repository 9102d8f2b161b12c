#include "pathhj/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace pathhj {

double integrate_scalar(std::span<const double> samples, double dt) {
    if (samples.size() < 1) throw std::invalid_argument("integrate_scalar: empty samples");
    if (samples.size() == 1) return 0.0;
    double s = 0.0;
    for (size_t k = 0; k + 1 < samples.size(); ++k) s += samples[k] + samples[k + 1];
    return 0.5 * dt * s;
}

double integrate_scalar(std::span<const double> samples, const GridSpec& grid,
                        int a_node, int b_node) {
    if (a_node > b_node) throw std::invalid_argument("integrate_scalar: reversed bounds");
    if (a_node < 0 || b_node >= static_cast<int>(samples.size()))
        throw std::invalid_argument("integrate_scalar: node range outside samples");
    return integrate_scalar(samples.subspan(a_node, b_node - a_node + 1), grid.dt);
}

namespace {

double diff_norm(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace

double rho_inf(const PathPoint& p, const PathPoint& q) {
    require_same_grid(p.grid(), q.grid(), "rho_inf");
    const GridSpec& g = p.grid();
    double sup = 0.0;
    for (int k = 0; k < g.total_nodes(); ++k)
        sup = std::max(sup, diff_norm(p.node_ext(k), q.node_ext(k)));
    return std::abs(p.t() - q.t()) + sup;
}

double rho_1(const PathPoint& p, const PathPoint& q) {
    require_same_grid(p.grid(), q.grid(), "rho_1");
    const GridSpec& g = p.grid();
    double integ = 0.0;
    double prev = diff_norm(p.node_ext(0), q.node_ext(0));
    for (int k = 1; k < g.total_nodes(); ++k) {
        const double cur = diff_norm(p.node_ext(k), q.node_ext(k));
        integ += prev + cur;
        prev = cur;
    }
    integ *= 0.5 * g.dt;
    return std::abs(p.t() - q.t()) + diff_norm(p.current(), q.current()) + integ;
}

}  // namespace pathhj
