#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pathhj/path.hpp"

namespace pathhj {

/// Hamiltonian H(t, x(.), s) with its declared gradient-scale constant:
/// |H(p, s) - H(p, r)| <= c_H (1 + sup||x||) ||s - r|| is assumed and can be
/// spot-checked with validate_hamiltonian.
struct HamiltonianSpec {
    std::function<double(const PathPoint&, std::span<const double>)> eval;
    double c_H = 0.0;
    std::string name;

    double operator()(const PathPoint& p, std::span<const double> s) const {
        return eval(p, s);
    }
};

struct HamiltonianReport {
    int samples = 0;
    double worst_lipschitz_violation = 0.0;  ///< max of |dH| - c_H(1+||x||)||ds||
    struct ModulusRow {
        double distance;  ///< rho_inf between the probed points
        double delta_H;   ///< matching |H difference| at fixed s
    };
    std::vector<ModulusRow> modulus;  ///< continuity scatter in (t, x)
    bool ok(double tol = 1e-9) const { return worst_lipschitz_violation <= tol; }
};

/// Sampled check of the declared Lipschitz-in-s bound plus a continuity
/// scatter in the path argument. Report-only; never throws on violations.
HamiltonianReport validate_hamiltonian(const HamiltonianSpec& H, const GridSpec& grid,
                                       int budget, uint64_t seed);

/// Radius of the state-dependent derivative ball: c_H (1 + sup||x||).
double char_ball_radius(const PathPoint& p, double c_H);

/// Extensions whose per-step derivative stays inside the state-dependent
/// ball, the radius being re-evaluated at each step's left node. Always
/// contains the constant extension; adds clipped straight lines and random
/// selections. Deterministic in (count, seed).
std::vector<SampledPath> sample_characteristics(const PathPoint& p, double c_H,
                                                int count, uint64_t seed);

}  // namespace pathhj
