#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace itolab {

/// Box [lo, hi] split into n cells per axis (1 or 2 axes).
struct GridSpec {
    std::vector<double> lo;
    std::vector<double> hi;
    std::vector<std::size_t> cells;

    void validate() const;
    std::size_t dim() const noexcept { return cells.size(); }
    std::size_t size() const noexcept;
    double spacing(std::size_t axis) const noexcept {
        return (hi[axis] - lo[axis]) / static_cast<double>(cells[axis]);
    }
    double cell_volume() const noexcept;
    double center(std::size_t axis, std::size_t index) const noexcept {
        return lo[axis] + (static_cast<double>(index) + 0.5) * spacing(axis);
    }
    // Edge k of an axis, k in [0, cells]; the last edge is exactly hi.
    double edge(std::size_t axis, std::size_t k) const noexcept {
        return k == cells[axis] ? hi[axis] : lo[axis] + static_cast<double>(k) * spacing(axis);
    }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Cell-centered values on a GridSpec; x varies fastest (index = j * nx + i).
struct ScalarGrid {
    GridSpec spec;
    std::vector<double> values;

    ScalarGrid() = default;
    explicit ScalarGrid(GridSpec s, double fill = 0.0);

    double& at(std::size_t i, std::size_t j = 0) noexcept { return values[j * spec.cells[0] + i]; }
    double at(std::size_t i, std::size_t j = 0) const noexcept {
        return values[j * spec.cells[0] + i];
    }

    // sum(values) * cell volume
    double mass() const noexcept;
    // Scales to unit mass; throws InvalidParameter when the mass is not positive.
    void normalize();
    bool all_finite() const noexcept;
    double min_value() const noexcept;
};

// Block-averages a grid whose cell counts are `factor` times those of the result.
ScalarGrid coarsen(const ScalarGrid& fine, std::size_t factor);

// Same box, cell counts multiplied by factor.
GridSpec refined(const GridSpec& spec, std::size_t factor);

}  // namespace itolab
