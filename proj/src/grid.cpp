#include "pathhj/grid.hpp"

#include <cmath>

namespace pathhj {

namespace {

bool near_integer(double x, double* rounded) {
    const double r = std::round(x);
    *rounded = r;
    return std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x));
}

}  // namespace

GridSpec GridSpec::make(double h, double T, double dt, int n) {
    if (!(h > 0.0)) throw std::invalid_argument("/grid/h: must be > 0");
    if (!(T > 0.0)) throw std::invalid_argument("/grid/T: must be > 0");
    if (!(dt > 0.0)) throw std::invalid_argument("/grid/dt: must be > 0");
    if (n < 1) throw std::invalid_argument("/grid/n: must be >= 1");
    double sh = 0.0, sT = 0.0;
    if (!near_integer(h / dt, &sh) || sh < 1.0)
        throw std::invalid_argument("/grid/dt: h/dt must be a positive integer");
    if (!near_integer(T / dt, &sT))
        throw std::invalid_argument("/grid/dt: T/dt must be an integer");
    if (sT < 4.0)
        throw std::invalid_argument("/grid/dt: need dt <= T/4");
    GridSpec g;
    g.h = h;
    g.T = T;
    g.dt = dt;
    g.n = n;
    g.steps_h = static_cast<int>(sh);
    g.steps_T = static_cast<int>(sT);
    return g;
}

int GridSpec::index_of(double t) const {
    const double k = t / dt;
    const double r = std::round(k);
    if (std::abs(k - r) > 1e-9 * std::max(1.0, std::abs(k)))
        throw std::invalid_argument("time is not a grid node");
    const int idx = static_cast<int>(r);
    if (idx < 0 || idx > steps_T)
        throw std::invalid_argument("time outside [0, T]");
    return idx;
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* where) {
    if (!a.same_grid(b))
        throw std::invalid_argument(std::string(where) + ": grid mismatch");
}

}  // namespace pathhj
