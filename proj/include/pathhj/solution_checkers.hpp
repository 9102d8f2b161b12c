#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pathhj/ci_calculus.hpp"
#include "pathhj/functional.hpp"
#include "pathhj/hj_model.hpp"

namespace pathhj {

/// Executable margin checks for the solution criteria. Margins are
/// normalized so that PASS always means margin <= tol:
///   UM        inf over sampled extensions of the shifted-value-plus-integral
///             minus the value at the point
///   LM        mirrored sign (value minus sup)
///   UV / LV   worst signed inequality over accepted sub/supergradients
///   UM_MULTI  multi-direction lower derivative plus H
///   UV_INFEXT sampled infimum over extensions of the lower derivative plus H
///   UM_LIP    finite-direction reduction over an l-grid plus H
///   UM_D0     joint (time-window) variant plus H
enum class CriterionId { UM, LM, UV, LV, UM_MULTI, UV_INFEXT, UM_LIP, UM_D0 };

const char* criterion_name(CriterionId id);
CriterionId criterion_from_name(const std::string& name);

struct CriterionReport {
    CriterionId id{};
    double margin = 0.0;
    double tol = 0.0;
    bool pass = false;
    bool one_sided = true;   ///< sampled infima only bound the true margin
    bool vacuous = false;    ///< UV/LV with no accepted candidates
    double tau = 0.0;        ///< probe horizon for the non-local criteria
    std::vector<double> s;
    int budget = 0;
    uint64_t seed = 0;
    std::string note;
};

struct CheckerConfig {
    double tol = 1e-2;
    int budget = 48;
    uint64_t seed = 1;
    /// Additional candidate extensions per (point, s); the oracle-grade
    /// witnesses for control batteries (optimal and greedy motions) enter
    /// through this hook.
    std::function<std::vector<SampledPath>(const PathPoint&, std::span<const double>)>
        extra_candidates;
};

CriterionReport check_upper_minimax(const Functional& phi, const HamiltonianSpec& H,
                                    const PathPoint& p, int tau_index,
                                    std::span<const double> s, const CheckerConfig& cfg);
CriterionReport check_lower_minimax(const Functional& phi, const HamiltonianSpec& H,
                                    const PathPoint& p, int tau_index,
                                    std::span<const double> s, const CheckerConfig& cfg);
/// Requires phi tagged locally Lipschitz (candidates are membership-tested
/// against the finite-direction subdifferential approximation).
CriterionReport check_upper_viscosity(const Functional& phi, const HamiltonianSpec& H,
                                      const PathPoint& p, const CheckerConfig& cfg);
CriterionReport check_lower_viscosity(const Functional& phi, const HamiltonianSpec& H,
                                      const PathPoint& p, const CheckerConfig& cfg);
CriterionReport check_um_multi(const Functional& phi, const HamiltonianSpec& H,
                               const PathPoint& p, std::span<const double> s,
                               const CheckerConfig& cfg);
CriterionReport check_uv_infext(const Functional& phi, const HamiltonianSpec& H,
                                const PathPoint& p, std::span<const double> s,
                                const CheckerConfig& cfg);
CriterionReport check_um_lip(const Functional& phi, const HamiltonianSpec& H,
                             const PathPoint& p, std::span<const double> s,
                             const CheckerConfig& cfg);
CriterionReport check_um_d0(const Functional& phi, const HamiltonianSpec& H,
                            const PathPoint& p, std::span<const double> s,
                            const CheckerConfig& cfg);

/// Default s probes: {0, +-e_i, +-2 e_i} plus sphere samples at radius
/// max(1, c_H).
std::vector<std::vector<double>> default_s_grid(int n, double c_H, uint64_t seed);

struct CrossValidation {
    struct Row {
        int point = 0;
        std::vector<double> s;
        CriterionReport report;
    };
    std::vector<Row> rows;
    /// Worst margin per criterion across the sweep.
    std::map<CriterionId, double> worst_margin;
    /// PASS per criterion (all rows passed).
    std::map<CriterionId, bool> verdict;
};

/// Runs every applicable criterion at every (point, s, tau) combination.
/// Criteria requiring the Lipschitz tag are skipped when it is absent.
CrossValidation cross_validate(const Functional& phi, const HamiltonianSpec& H,
                               std::span<const PathPoint> points,
                               std::span<const std::vector<double>> s_grid,
                               std::span<const int> tau_indices,
                               const CheckerConfig& cfg);

}  // namespace pathhj
