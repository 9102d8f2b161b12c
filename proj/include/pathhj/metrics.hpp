#pragma once

#include <span>

#include "pathhj/path.hpp"

namespace pathhj {

/// Trapezoid rule over consecutive samples spaced dt apart.
/// Exact for affine integrands.
double integrate_scalar(std::span<const double> samples, double dt);

/// Trapezoid rule between grid nodes a_node <= b_node of a per-node sample
/// table covering [-h, T].
double integrate_scalar(std::span<const double> samples, const GridSpec& grid,
                        int a_node, int b_node);

/// rho_inf((t,x),(tau,y)) = |t - tau| + sup over [-h,T] of
/// ||x(. ^ t) - y(. ^ tau)||.
double rho_inf(const PathPoint& p, const PathPoint& q);

/// rho_1((t,x),(tau,y)) = |t - tau| + ||x(t) - y(tau)||
/// + integral over [-h,T] of ||x(. ^ t) - y(. ^ tau)||  (trapezoid).
/// Satisfies rho_1 <= (1 + T + h) rho_inf.
double rho_1(const PathPoint& p, const PathPoint& q);

}  // namespace pathhj
