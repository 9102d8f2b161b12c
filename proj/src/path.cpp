#include "pathhj/path.hpp"

#include <algorithm>
#include <cmath>

namespace pathhj {

namespace {

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

}  // namespace

SampledPath SampledPath::from_values(const GridSpec& grid, int t_index,
                                     std::vector<double> values) {
    if (t_index < 0 || t_index > grid.steps_T)
        throw std::invalid_argument("/t: time index outside [0, T]");
    const size_t want = static_cast<size_t>(grid.nodes_at(t_index)) * grid.n;
    if (values.size() != want)
        throw std::invalid_argument("/values: expected " + std::to_string(want) +
                                    " entries, got " + std::to_string(values.size()));
    SampledPath p;
    p.grid_ = grid;
    p.t_index_ = t_index;
    p.values_ = std::move(values);
    return p;
}

SampledPath SampledPath::constant(const GridSpec& grid, int t_index,
                                  std::span<const double> c) {
    if (static_cast<int>(c.size()) != grid.n)
        throw std::invalid_argument("constant: dimension mismatch");
    std::vector<double> vals(static_cast<size_t>(grid.nodes_at(t_index)) * grid.n);
    for (int k = 0; k < grid.nodes_at(t_index); ++k)
        std::copy(c.begin(), c.end(), vals.begin() + static_cast<size_t>(k) * grid.n);
    return from_values(grid, t_index, std::move(vals));
}

std::vector<double> SampledPath::value_at(double xi) const {
    const double pos = (xi + grid_.h) / grid_.dt;
    const double lo = std::floor(pos);
    int k = static_cast<int>(lo);
    k = std::clamp(k, 0, end_node());
    const int k1 = std::min(k + 1, end_node());
    const double w = std::clamp(pos - static_cast<double>(k), 0.0, 1.0);
    std::vector<double> out(grid_.n);
    auto a = node(k);
    auto b = node(k1);
    for (int i = 0; i < grid_.n; ++i) out[i] = (1.0 - w) * a[i] + w * b[i];
    return out;
}

double sup_norm(const SampledPath& p) {
    double best = 0.0;
    for (int k = 0; k < p.node_count(); ++k)
        best = std::max(best, norm2(p.node(k)));
    return std::sqrt(best);
}

double current_norm(const SampledPath& p) { return std::sqrt(norm2(p.current())); }

SampledPath constant_extension(const SampledPath& p, int to_index) {
    if (to_index < p.t_index())
        throw std::invalid_argument("constant_extension: target before current time");
    const GridSpec& g = p.grid();
    std::vector<double> vals(static_cast<size_t>(g.nodes_at(to_index)) * g.n);
    auto src = p.raw();
    std::copy(src.begin(), src.end(), vals.begin());
    auto last = p.current();
    for (int k = p.node_count(); k < g.nodes_at(to_index); ++k)
        std::copy(last.begin(), last.end(), vals.begin() + static_cast<size_t>(k) * g.n);
    return SampledPath::from_values(g, to_index, std::move(vals));
}

SampledPath restrict_to(const SampledPath& z, int t_index) {
    if (t_index > z.t_index())
        throw std::invalid_argument("restrict_to: time beyond end of path");
    if (t_index < 0) throw std::invalid_argument("restrict_to: negative time index");
    const GridSpec& g = z.grid();
    auto src = z.raw();
    std::vector<double> vals(src.begin(),
                             src.begin() + static_cast<size_t>(g.nodes_at(t_index)) * g.n);
    return SampledPath::from_values(g, t_index, std::move(vals));
}

SampledPath make_extension(const SampledPath& p, std::span<const double> derivs) {
    const GridSpec& g = p.grid();
    const int steps = g.steps_T - p.t_index();
    if (static_cast<int>(derivs.size()) != steps * g.n)
        throw std::invalid_argument("make_extension: expected one derivative per step of [t, T]");
    std::vector<double> vals(static_cast<size_t>(g.total_nodes()) * g.n);
    auto src = p.raw();
    std::copy(src.begin(), src.end(), vals.begin());
    for (int s = 0; s < steps; ++s) {
        const size_t prev = static_cast<size_t>(p.node_count() - 1 + s) * g.n;
        const size_t next = prev + g.n;
        for (int i = 0; i < g.n; ++i)
            vals[next + i] = vals[prev + i] + g.dt * derivs[static_cast<size_t>(s) * g.n + i];
    }
    return SampledPath::from_values(g, g.steps_T, std::move(vals));
}

SampledPath line_extension(const SampledPath& p, std::span<const double> l) {
    const GridSpec& g = p.grid();
    if (static_cast<int>(l.size()) != g.n)
        throw std::invalid_argument("line_extension: dimension mismatch");
    const int steps = g.steps_T - p.t_index();
    std::vector<double> derivs(static_cast<size_t>(steps) * g.n);
    for (int s = 0; s < steps; ++s)
        std::copy(l.begin(), l.end(), derivs.begin() + static_cast<size_t>(s) * g.n);
    return make_extension(p, derivs);
}

SampledPath difference_path(const SampledPath& a, const SampledPath& b, int t_index) {
    require_same_grid(a.grid(), b.grid(), "difference_path");
    const GridSpec& g = a.grid();
    std::vector<double> vals(static_cast<size_t>(g.nodes_at(t_index)) * g.n);
    for (int k = 0; k < g.nodes_at(t_index); ++k) {
        auto xa = a.node_ext(k);
        auto xb = b.node_ext(k);
        for (int i = 0; i < g.n; ++i)
            vals[static_cast<size_t>(k) * g.n + i] = xa[i] - xb[i];
    }
    return SampledPath::from_values(g, t_index, std::move(vals));
}

bool in_G_alpha(const SampledPath& p, double alpha) { return sup_norm(p) <= alpha; }

}  // namespace pathhj
