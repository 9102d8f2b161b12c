#pragma once

#include <stdexcept>
#include <string>

namespace pathhj {

/// Uniform time grid covering [-h, T] with step dt and state dimension n.
///
/// Every time that enters the library (current times, restriction times,
/// quotient offsets) is required to sit on a grid node; node k corresponds to
/// the time -h + k*dt, so node steps_h is t = 0 and node steps_h + steps_T
/// is t = T. Keeping times on nodes makes restriction/extension round trips
/// and the trapezoid integrals exact on piecewise-affine data.
struct GridSpec {
    double h = 0.0;   ///< delay length, > 0
    double T = 0.0;   ///< horizon, > 0
    double dt = 0.0;  ///< step, > 0; h/dt and T/dt integral, dt <= T/4
    int n = 0;        ///< state dimension, >= 1
    int steps_h = 0;  ///< round(h/dt)
    int steps_T = 0;  ///< round(T/dt)

    /// Validates the invariants and fills the step counts. Throws
    /// std::invalid_argument with a field pointer on violation.
    static GridSpec make(double h, double T, double dt, int n);

    int total_nodes() const { return steps_h + steps_T + 1; }
    /// Number of stored nodes for a history ending at time index t_index.
    int nodes_at(int t_index) const { return steps_h + t_index + 1; }
    /// Time of grid node k (k = 0 is -h).
    double node_time(int k) const { return static_cast<double>(k - steps_h) * dt; }
    /// Time of a current-time index (0 is t = 0, steps_T is t = T).
    double index_time(int t_index) const { return static_cast<double>(t_index) * dt; }
    /// Nearest time index for t in [0, T]; throws if t is off-grid.
    int index_of(double t) const;

    bool same_grid(const GridSpec& o) const {
        return n == o.n && steps_h == o.steps_h && steps_T == o.steps_T &&
               h == o.h && T == o.T && dt == o.dt;
    }
};

/// Throws std::invalid_argument mentioning `where` unless grids agree.
void require_same_grid(const GridSpec& a, const GridSpec& b, const char* where);

}  // namespace pathhj
