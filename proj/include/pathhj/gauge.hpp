#pragma once

#include <span>
#include <vector>

#include "pathhj/path.hpp"

namespace pathhj {

/// Scale data for the gauge kernel on G(alpha): the kernel is capped by
/// cap() = T^2 + 8 alpha^2 + 1 there. cap() is computed on demand, never
/// stored.
struct GaugeParams {
    double alpha = 0.0;
    double horizon = 0.0;  ///< T of the grid in use

    static GaugeParams make(double alpha, double horizon);
    double cap() const { return horizon * horizon + 8.0 * alpha * alpha + 1.0; }
};

/// Smooth surrogate of the squared uniform norm:
///   (sup^2 - ||x(t)||^2)^2 / sup^2 + ||x(t)||^2   (0 on the zero path).
/// Sits between (3 - sqrt(5))/2 * sup^2 and 2 * sup^2.
double smooth_norm2(const PathPoint& p);

/// Time part of the smooth surrogate's pathwise derivative pair; identically
/// zero. Requires t < T.
double smooth_norm2_dt(const PathPoint& p);

/// Spatial part: (2 - 4 (sup^2 - ||x(t)||^2)/sup^2) x(t); norm bounded by
/// 2 ||x(t)||. Requires t < T.
std::vector<double> smooth_norm2_grad(const PathPoint& p);

struct BoundsMargin {
    double lower = 0.0;  ///< value - (3 - sqrt(5))/2 * sup^2
    double upper = 0.0;  ///< 2 * sup^2 - value
};
BoundsMargin smooth_norm2_bounds_margin(const PathPoint& p);

/// 2 ||x(t)|| - ||grad||; nonnegative up to roundoff.
double smooth_norm2_grad_margin(const PathPoint& p);

/// The surrogate applied at the horizon to the difference of constant
/// extensions of two histories. Symmetric; zero on the diagonal.
double pair_smooth_norm2(const PathPoint& p, const PathPoint& q);

/// Gauge kernel: (t - tau)^2 + smooth_norm2 of the difference history when
/// t >= tau, else the cap. Nonnegative, zero exactly on the diagonal,
/// bounded by cap() on G(alpha) x G(alpha).
double gauge_kernel(const PathPoint& p, const PathPoint& q, const GaugeParams& g);

/// Squared integral-type distance:
///   ||x(t) - y(tau)||^2 + integral over [-h,T] of ||x(. ^ t) - y(. ^ tau)||^2.
/// Symmetric. Trapezoid on the shared grid (error O(dt^2): the integrand is
/// quadratic between nodes).
double quad_distance(const PathPoint& p, const PathPoint& q);

/// Pathwise gradient of quad_distance in its first argument:
///   2 (x(t) - y(tau)) + 2 * integral from t to T of (x(t) - y(. ^ tau)).
/// The time part of the derivative pair is zero.
std::vector<double> quad_distance_grad1(const PathPoint& p, const PathPoint& q);
/// Gradient in the second argument (by symmetry).
std::vector<double> quad_distance_grad2(const PathPoint& p, const PathPoint& q);

/// Probe reproducing the one-dimensional example in which the pair
/// surrogate anchored at the horizon fails to have a pathwise derivative:
/// along the straight extension with slope l > 1, the implied gradient
/// limit is 2 (l - 1) / l, which depends on l. The probe returns that
/// implied-gradient limit (quotient / l) estimated over the given shrinking
/// offsets, with l == 0 accepted as the pure time probe (limit 0).
struct ProbeResult {
    std::vector<double> taus;
    std::vector<double> quotients;  ///< implied gradients, one per tau
    double limit = 0.0;             ///< two-point extrapolation of the tail
};
ProbeResult direction_dependence_probe(double l, std::span<const double> taus);
ProbeResult direction_dependence_probe(double l);  ///< dyadic default offsets

}  // namespace pathhj
