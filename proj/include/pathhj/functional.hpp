#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pathhj/path.hpp"

namespace pathhj {

/// Regularity classes a caller may assert about a functional. Tags are not
/// verified; they gate which estimators are licensed (the finite-direction
/// reduction needs locally_lipschitz) and are recorded in reports.
enum FuncTag : unsigned {
    kContinuous = 1u << 0,
    kRho1LowerSemicontinuous = 1u << 1,
    kRho1UpperSemicontinuous = 1u << 2,
    kLocallyLipschitz = 1u << 3,
};

/// An evaluatable map G -> R with asserted regularity tags.
struct Functional {
    std::function<double(const PathPoint&)> eval;
    unsigned tags = 0;
    std::string name;

    double operator()(const PathPoint& p) const { return eval(p); }
    bool has(FuncTag t) const { return (tags & t) != 0; }
};

/// phi_s(t, x(.)) = phi(t, x(.)) - <s, x(t)>.
Functional linear_shift(const Functional& phi, std::vector<double> s);

}  // namespace pathhj
