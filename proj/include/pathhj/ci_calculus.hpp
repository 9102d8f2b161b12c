#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pathhj/functional.hpp"
#include "pathhj/rng.hpp"

namespace pathhj {

/// Dyadic quotient offsets 2^-k (T - t), k = 4..12, snapped to grid nodes,
/// deduplicated, largest first. Always contains at least one step.
std::vector<int> dyadic_offsets(const GridSpec& grid, int t_index);

/// Difference-quotient trace of phi along an extension of p at the given
/// node offsets, plus the derived estimates. The liminf (resp. limsup) is
/// realized as the running min (resp. max) over the schedule; `refined`
/// carries a two-point extrapolation of the smallest-offset tail, used when
/// the extrapolants settle (the plain min/max would otherwise carry an
/// O(tau) bias on smooth functionals).
struct QuotientEstimate {
    std::vector<double> offsets;    ///< tau - t per entry
    std::vector<double> quotients;  ///< matching difference quotients
    double running_min = 0.0;
    double running_max = 0.0;
    double refined = 0.0;
    bool converged = false;

    /// Lower-derivative estimate: extrapolation when converged, else the min.
    double lower_value() const { return converged ? refined : running_min; }
    /// Upper-derivative estimate: extrapolation when converged, else the max.
    double upper_value() const { return converged ? refined : running_max; }
};

/// Quotients of phi at (t, x(.)) along a full extension z on [-h, T]
/// (z must agree with p up to t; callers obtain z from make_extension).
QuotientEstimate quotient_trace(const Functional& phi, const PathPoint& p,
                                const SampledPath& ext, std::span<const int> offsets);

QuotientEstimate lower_right_derivative(const Functional& phi, const PathPoint& p,
                                        const SampledPath& ext,
                                        std::span<const int> offsets);
QuotientEstimate upper_right_derivative(const Functional& phi, const PathPoint& p,
                                        const SampledPath& ext,
                                        std::span<const int> offsets);

/// Lower right derivative in the single direction l (straight extension).
double dir_deriv_single(const Functional& phi, const PathPoint& p,
                        std::span<const double> l);
double dir_deriv_single(const Functional& phi, const PathPoint& p,
                        std::span<const double> l, std::span<const int> offsets);

/// A non-empty convex compact direction set: a centred ball or the convex
/// hull of explicit vertices. The eps-enlargement is realized through
/// extreme-point lists and rejection-free sampling.
struct DirectionSet {
    enum class Kind { kBall, kPolytope };
    Kind kind = Kind::kBall;
    int dim = 0;
    double radius = 0.0;
    std::vector<std::vector<double>> vertices;

    static DirectionSet ball(int n, double r);
    static DirectionSet polytope(std::vector<std::vector<double>> verts);

    double max_norm() const;
    /// Deterministic extreme candidates of the eps-enlargement.
    std::vector<std::vector<double>> extreme_points(double eps) const;
    /// Random point of the eps-enlargement.
    std::vector<double> sample(double eps, Rng& rng) const;
    /// min over the eps-enlargement of <d, l> (support function of -d).
    double min_inner(std::span<const double> d, double eps) const;
};

/// Sampled one-sided estimate of an infimum of right derivatives. Sampling
/// can only overestimate an inf, so `estimate` is an upper bound of the true
/// value at the reported budget.
struct DirectionalEstimate {
    double estimate = 0.0;
    std::vector<double> levels;           ///< enlargement per refinement level
    std::vector<double> level_estimates;  ///< estimate per level
    std::vector<double> witness_derivs;   ///< per-step derivative of the argmin
    int budget = 0;
    uint64_t seed = 0;
    bool one_sided = true;
};

/// Both multi-direction derivative estimates from one shared candidate
/// table: `multi` is the lower right derivative in the multi-valued
/// direction L (inf over tube selections of the quotient liminf) and
/// `joint` is the variant taking the infimum jointly over the selection and
/// the time offset within the shrinking window. The joint estimate folds in
/// the multi estimate at each level, which keeps the ordering
/// joint <= multi that the continuous objects satisfy.
struct DirectionalScan {
    DirectionalEstimate multi;
    DirectionalEstimate joint;
};
DirectionalScan scan_directions(const Functional& phi, const PathPoint& p,
                                const DirectionSet& L, int budget, uint64_t seed);

DirectionalEstimate dir_deriv_multi(const Functional& phi, const PathPoint& p,
                                    const DirectionSet& L, int budget, uint64_t seed);
DirectionalEstimate dir_deriv_d0(const Functional& phi, const PathPoint& p,
                                 const DirectionSet& L, int budget, uint64_t seed);

/// Default direction grid {0} u {+-scale e_i} u 2n random directions of
/// that radius u halves of everything.
std::vector<std::vector<double>> default_l_grid(int n, double scale, uint64_t seed);

/// Outer polyhedral approximation of the subdifferential (or
/// superdifferential) at a point, described by one constraint per grid
/// direction: p0 + <p, l> <= bound(l) (mirrored for the super variant).
struct SubdiffApprox {
    std::vector<std::vector<double>> l_grid;
    std::vector<double> bounds;
    bool super = false;
    double tol = 0.0;

    bool contains(double p0, std::span<const double> p) const;
    /// max over constraints of the signed violation; <= 0 means inside.
    double worst_slack(double p0, std::span<const double> p) const;
};

/// Requires phi tagged kLocallyLipschitz (the finite-direction reduction is
/// only licensed for that class); throws otherwise.
SubdiffApprox approx_subdifferential(const Functional& phi, const PathPoint& p,
                                     std::span<const std::vector<double>> l_grid,
                                     double tol);
SubdiffApprox approx_superdifferential(const Functional& phi, const PathPoint& p,
                                       std::span<const std::vector<double>> l_grid,
                                       double tol);

/// Candidate (p0, p) pairs built from single-direction derivative estimates
/// (central and one-sided slopes per coordinate), to be membership-tested
/// against an approximate sub/superdifferential.
std::vector<std::pair<double, std::vector<double>>> gradient_candidates(
    const Functional& phi, const PathPoint& p, double scale);

}  // namespace pathhj
