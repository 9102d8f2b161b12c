#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pathhj/path.hpp"

namespace pathhj {

/// Time-delay optimal control problem: dynamics f, running cost chi,
/// terminal cost sigma over full paths, and a finite control set U.
/// The declared growth constant c_fchi bounds ||f|| + |chi| by
/// c_fchi (1 + sup||x||); it doubles as the Hamiltonian scale.
struct DelayControlProblem {
    GridSpec grid;
    std::vector<std::vector<double>> U;
    std::function<std::vector<double>(const PathPoint&, std::span<const double>)> f;
    std::function<double(const PathPoint&, std::span<const double>)> chi;
    std::function<double(const SampledPath&)> sigma;
    double c_fchi = 0.0;
    bool sigma_rho1_lipschitz = false;  ///< caller-declared, used by reports
    std::string name;
};

/// One control index per grid step of [t, T]; controls are piecewise
/// constant on steps.
struct ControlSignal {
    int start_index = 0;
    std::vector<int> steps;
};

/// Explicit Euler motion: z(node+dt) = z(node) + dt f(restriction at node, u).
SampledPath integrate_motion(const DelayControlProblem& prob, const PathPoint& p,
                             const ControlSignal& u);

/// sigma(z(.)) + per-step trapezoid of chi along the motion.
double cost(const DelayControlProblem& prob, const PathPoint& p, const ControlSignal& u);

struct ValueResult {
    double value = 0.0;
    ControlSignal witness;
    bool exact = false;       ///< true only for exhaustive enumeration
    long long explored = 0;   ///< signals examined
};

/// Exact minimum over all piecewise-constant signals; requires
/// |U|^steps <= budget and throws otherwise. Ties resolve to the
/// lexicographically smallest signal.
ValueResult value_exhaustive(const DelayControlProblem& prob, const PathPoint& p,
                             long long budget);

/// Beam search over the control tree ordered by accumulated cost, followed
/// by coordinate-descent refinement of the winner. Upper bound of the exact
/// value; labeled exact = false.
ValueResult value_beam(const DelayControlProblem& prob, const PathPoint& p,
                       int width, int refine_passes = 2);

/// min over u in U of <s, f(p, u)> + chi(p, u); exact for finite U.
double bellman_hamiltonian(const DelayControlProblem& prob, const PathPoint& p,
                           std::span<const double> s);

/// Motion under the per-step Hamiltonian-greedy feedback
/// u(node) = argmin <s, f> + chi (left-node evaluation).
SampledPath greedy_motion(const DelayControlProblem& prob, const PathPoint& p,
                          std::span<const double> s);

/// |value(p) - min over step controls of (integral of chi to tau + value at
/// tau)| with exhaustive sub-enumeration on both sides.
double dpp_residual(const DelayControlProblem& prob, const PathPoint& p,
                    int tau_index, long long budget);

struct RegularityReport {
    double alpha = 0.0;
    double alpha_star_empirical = 0.0;  ///< largest sup-norm reached from G(alpha)
    double alpha_star_gronwall = 0.0;   ///< (1 + alpha) e^{c (T - t)} - 1 envelope
    struct ModulusRow {
        double rho1;
        double dvalue;
    };
    std::vector<ModulusRow> modulus;   ///< |value difference| vs rho_1, same t
    double lambda_fit = 0.0;           ///< max ratio dvalue / rho1 over the sample
    bool sigma_rho1_lipschitz = false;
};

/// Empirical growth/modulus report at exhaustive-feasible scale.
RegularityReport regularity_report(const DelayControlProblem& prob, double alpha,
                                   int budget, uint64_t seed);

/// Builtin: n-dimensional integrator dz = u with terminal cost ||z(T)||
/// (absolute value for n = 1) and zero running cost.
DelayControlProblem make_integrator_problem(const GridSpec& grid,
                                            std::vector<std::vector<double>> U);

/// Builtin: linear delay dynamics dz = A0 z(t) + A1 z(t - h) + B u.
DelayControlProblem make_linear_delay_problem(const GridSpec& grid,
                                              std::vector<std::vector<double>> U,
                                              std::vector<double> A0,
                                              std::vector<double> A1,
                                              std::vector<double> B,
                                              const std::string& sigma_kind,
                                              const std::string& chi_kind);

}  // namespace pathhj
