#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "itolab/rng.hpp"

namespace itolab {

/// One realized trajectory on a uniform time grid.
///
/// `states` is row-major with one row of `dim` components per grid node,
/// so `states.size() == times.size() * dim`. Paths are immutable once built.
class Path {
public:
    Path() = default;
    // Uniform grid t_i = T * i / n_steps; states must hold (n_steps + 1) * dim values.
    Path(double T, std::size_t n_steps, std::size_t dim, std::vector<double> states);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t n_steps() const noexcept { return times_.empty() ? 0 : times_.size() - 1; }
    std::size_t n_nodes() const noexcept { return times_.size(); }
    double dt() const noexcept { return dt_; }
    double horizon() const noexcept { return times_.empty() ? 0.0 : times_.back(); }

    std::span<const double> times() const noexcept { return times_; }
    std::span<const double> states() const noexcept { return states_; }
    std::span<const double> state(std::size_t node) const noexcept {
        return {states_.data() + node * dim_, dim_};
    }
    double at(std::size_t node, std::size_t component = 0) const noexcept {
        return states_[node * dim_ + component];
    }
    std::span<const double> terminal() const noexcept { return state(n_nodes() - 1); }

    // Increment of one component between node i and i + 1.
    double increment(std::size_t step, std::size_t component = 0) const noexcept {
        return at(step + 1, component) - at(step, component);
    }

    // Same grid (node count and spacing).
    bool same_grid(const Path& other) const noexcept;

private:
    std::vector<double> times_;
    std::vector<double> states_;
    std::size_t dim_ = 0;
    double dt_ = 0.0;
};

/// Brownian path started at x0 (dimension = x0.size()).
///
/// Increments are sqrt(dt) * z with z drawn from `stream` in node-major,
/// component-minor order, prefix-summed, then offset by x0.
Path brownian_path(RngStream& stream, std::span<const double> x0, double T, std::size_t n_steps);

}  // namespace itolab
