#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "pathhj/ci_calculus.hpp"
#include "pathhj/functional.hpp"
#include "pathhj/gauge.hpp"

namespace pathhj {

/// Finite proxy for a closed subset of G(alpha) intersected with {t < T}.
struct DiscreteSet {
    std::vector<PathPoint> points;
    double alpha = 0.0;

    /// Validates membership and removes exact duplicates.
    static DiscreteSet make(std::vector<PathPoint> points, double alpha);
};

/// Smooth perturbation psi(p) = sum_k w_k * kernel(p, anchor_k) with
/// w_k = kappa / 2^k for k < m and w_m = kappa / 2^(m-1): the final anchor
/// carries the whole geometric tail of the repeated-anchor series, so no
/// truncation error arises.
struct Perturbation {
    std::vector<PathPoint> anchors;
    double kappa = 0.0;
    GaugeParams gauge;

    double weight(size_t k) const;
    double eval(const PathPoint& p) const;

    /// Pathwise derivative pair (d/dt, gradient) at p; requires p.t >= every
    /// anchor time (the kernel is differentiable only on that side).
    /// |d/dt| <= 4 T kappa and ||grad|| <= 8 alpha kappa on G(alpha).
    std::pair<double, std::vector<double>> ci_derivatives(const PathPoint& p) const;
};

struct BpResult {
    int minimizer_index = -1;
    PathPoint minimizer;
    Perturbation psi;
    std::vector<double> anchor_gauge;  ///< kernel(minimizer, anchor_k) per k
    double min_value = 0.0;            ///< (phi + psi) at the minimizer
};

/// Perturbed minimization on a finite set: anchor 0 is the first
/// kappa^2-near-minimizer of phi, later anchors are exact argmins of
/// phi + psi with ties resolving to the previous anchor. Stops when the
/// anchor repeats or max_anchors is hit. Guarantees on output:
/// exact minimality of phi + psi at the minimizer, anchor kernels
/// <= kappa / 2^k, and 0 <= psi <= 2 cap kappa on the set.
BpResult bp_minimize(const Functional& phi, const DiscreteSet& X, double kappa,
                     int max_anchors = 8);

struct PenaltyDiagnostics {
    int k = 0;
    double quad_dist = 0.0;      ///< coupling distance at the minimizing pair
    double time_gap_sq = 0.0;    ///< (t - tau)^2 there
    double quad_bound = 0.0;     ///< beta / k
    double time_bound = 0.0;     ///< beta / k^4
    bool thresholds_met = false;
    double margin = 0.0;
    double p0 = 0.0;
    std::vector<double> p;
};

struct SubgradParams {
    double eta = 0.1;
    double eps_star = 0.0;    ///< 0: use half the joint derivative estimate
    double delta = 0.0;       ///< 0: eta / (2 + lambda_L)
    std::vector<int> k_schedule = {4, 8, 16};
    int trajectory_count = 4;
    int stencil = 16;         ///< tube offsets per sign per coordinate
    int enrich_rounds = 3;    ///< forward-continuation refreshes of the family
    int d0_budget = 40;
    uint64_t seed = 7;
    double membership_tol = 0.0;  ///< 0: derived from the grid resolution
};

struct SubgradResult {
    bool refused = false;
    std::string refusal;
    double d0_estimate = 0.0;
    double eps_star = 0.0;
    double delta = 0.0;
    double lambda_L = 0.0;
    double beta = 0.0;
    int k_used = -1;
    PathPoint point;
    double p0 = 0.0;
    std::vector<double> p;
    double margin = 0.0;       ///< min over the direction set of p0 + <p, l>
    double rho_to_start = 0.0;
    bool membership = false;
    double membership_tol = 0.0;
    std::vector<PenaltyDiagnostics> diagnostics;
    bool success() const { return !refused && k_used >= 0 && margin > 0.0 && membership; }
};

/// Penalized search for a subgradient with positive inner products over the
/// direction set L near a point where the joint directional derivative over
/// L is positive. Refuses to run when the derivative estimate is not
/// positive. The tube radius, penalty schedule and acceptance thresholds
/// follow the construction documented in the result fields.
SubgradResult subgradient_search(const Functional& phi, const PathPoint& start,
                                 const DirectionSet& L, const SubgradParams& params);

struct GaugeAxiomReport {
    double worst_negative = 0.0;       ///< most negative kernel value seen
    double worst_diagonal = 0.0;       ///< largest |kernel(p, p)|
    double worst_bound_violation = 0.0;///< kernel - (T^2 + 2 (||x|| + ||y||)^2)
    bool convergence_ok = false;       ///< kernel -> 0 forced rho_inf -> 0
    double lsc_margin = 0.0;           ///< liminf kernel - kernel at the limit
    bool ok(double tol = 1e-9) const {
        return worst_negative >= -tol && std::abs(worst_diagonal) <= tol &&
               worst_bound_violation <= tol && convergence_ok &&
               lsc_margin >= -1e-2;  // finite-sample liminf underestimates
    }
};

/// Sampled check of the gauge-kernel axioms on G(alpha).
GaugeAxiomReport gauge_axiom_suite(double alpha, const GridSpec& grid, int budget,
                                   uint64_t seed);

}  // namespace pathhj
