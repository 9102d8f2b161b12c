#pragma once

#include <span>
#include <vector>

#include "pathhj/grid.hpp"

namespace pathhj {

/// A history x : [-h, t] -> R^n sampled on the grid, with t a grid node.
/// Values between nodes are linear interpolants; everything downstream is
/// exact on this piecewise-affine class. Immutable after construction.
///
/// A SampledPath carries its own current time, so it doubles as the pair
/// (t, x(.)): PathPoint below is an alias, used where the pair reading of
/// the same data is the natural one.
class SampledPath {
  public:
    SampledPath() = default;

    /// values holds nodes_at(t_index) rows of n entries (node-major).
    static SampledPath from_values(const GridSpec& grid, int t_index,
                                   std::vector<double> values);
    /// Constant history x == c on [-h, t].
    static SampledPath constant(const GridSpec& grid, int t_index,
                                std::span<const double> c);

    const GridSpec& grid() const { return grid_; }
    int t_index() const { return t_index_; }
    double t() const { return grid_.index_time(t_index_); }
    int node_count() const { return grid_.nodes_at(t_index_); }
    /// Node of the current time within the storage.
    int end_node() const { return node_count() - 1; }

    std::span<const double> node(int k) const {
        return {values_.data() + static_cast<size_t>(k) * grid_.n,
                static_cast<size_t>(grid_.n)};
    }
    /// Node value with constant extension past t (reads clamp to the end).
    std::span<const double> node_ext(int k) const {
        return node(k < node_count() ? k : end_node());
    }
    /// x(t), the current state.
    std::span<const double> current() const { return node(end_node()); }

    /// Linear interpolation at an arbitrary time in [-h, t].
    std::vector<double> value_at(double xi) const;

    std::span<const double> raw() const { return values_; }

  private:
    GridSpec grid_;
    int t_index_ = 0;
    std::vector<double> values_;
};

/// An element (t, x(.)) of G; t < T means membership in G0 and
/// sup_norm <= alpha means membership in G(alpha).
using PathPoint = SampledPath;

/// Node-wise max of the Euclidean norm. Exact for the piecewise-affine
/// paths the library produces (segment maxima of ||.|| sit at nodes there);
/// for other data the error is bounded by lip * dt / 2.
double sup_norm(const SampledPath& p);

/// Euclidean norm of x(t).
double current_norm(const SampledPath& p);

/// x(. ^ t) continued constantly to the time index `to_index` >= t_index.
SampledPath constant_extension(const SampledPath& p, int to_index);

/// Truncation of the history at an earlier (or equal) time index.
SampledPath restrict_to(const SampledPath& z, int t_index);

/// Extension with one derivative vector per grid step of [t, T]
/// (derivs.size() == (steps_T - t_index) * n). The Lipschitz constant of the
/// extension equals the largest step-derivative norm.
SampledPath make_extension(const SampledPath& p, std::span<const double> derivs);

/// Straight-line extension z(tau) = x(t) + (tau - t) l.
SampledPath line_extension(const SampledPath& p, std::span<const double> l);

/// d(xi) = a(xi ^ ta) - b(xi ^ tb) as a history ending at time index
/// `t_index` (>= both end times or clamped reads apply).
SampledPath difference_path(const SampledPath& a, const SampledPath& b, int t_index);

/// True when sup_norm(p) <= alpha (membership in G(alpha)).
bool in_G_alpha(const SampledPath& p, double alpha);

}  // namespace pathhj
