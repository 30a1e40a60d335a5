#include "itolab/grid.hpp"

#include <algorithm>
#include <cmath>

#include "itolab/errors.hpp"

namespace itolab {

void GridSpec::validate() const {
    if (cells.empty() || cells.size() > 2) {
        throw DimensionError("grid must have 1 or 2 axes");
    }
    if (lo.size() != cells.size() || hi.size() != cells.size()) {
        throw DimensionError("grid box and cell counts disagree in dimension");
    }
    for (std::size_t a = 0; a < cells.size(); ++a) {
        if (cells[a] == 0) {
            throw InvalidParameter("grid needs at least one cell per axis");
        }
        if (!(hi[a] > lo[a]) || !std::isfinite(hi[a] - lo[a])) {
            throw InvalidParameter("grid box is degenerate");
        }
    }
}

std::size_t GridSpec::size() const noexcept {
    std::size_t n = 1;
    for (auto c : cells) n *= c;
    return n;
}

double GridSpec::cell_volume() const noexcept {
    double v = 1.0;
    for (std::size_t a = 0; a < cells.size(); ++a) v *= spacing(a);
    return v;
}

ScalarGrid::ScalarGrid(GridSpec s, double fill) : spec(std::move(s)) {
    spec.validate();
    values.assign(spec.size(), fill);
}

double ScalarGrid::mass() const noexcept {
    double s = 0.0;
    for (double v : values) s += v;
    return s * spec.cell_volume();
}

void ScalarGrid::normalize() {
    const double m = mass();
    if (!(m > 0.0) || !std::isfinite(m)) {
        throw InvalidParameter("cannot normalize a grid with non-positive mass");
    }
    for (double& v : values) v /= m;
}

bool ScalarGrid::all_finite() const noexcept {
    return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

double ScalarGrid::min_value() const noexcept {
    return values.empty() ? 0.0 : *std::min_element(values.begin(), values.end());
}

GridSpec refined(const GridSpec& spec, std::size_t factor) {
    if (factor == 0) {
        throw InvalidParameter("refinement factor must be positive");
    }
    GridSpec out = spec;
    for (auto& c : out.cells) c *= factor;
    return out;
}

ScalarGrid coarsen(const ScalarGrid& fine, std::size_t factor) {
    if (factor == 0) {
        throw InvalidParameter("coarsening factor must be positive");
    }
    GridSpec coarse = fine.spec;
    for (auto& c : coarse.cells) {
        if (c % factor != 0) {
            throw DimensionError("grid cells are not divisible by the coarsening factor");
        }
        c /= factor;
    }
    ScalarGrid out(coarse);
    const std::size_t nx = coarse.cells[0];
    const std::size_t ny = coarse.dim() == 2 ? coarse.cells[1] : 1;
    const std::size_t fy = coarse.dim() == 2 ? factor : 1;
    const double weight = 1.0 / static_cast<double>(factor * fy);
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            double s = 0.0;
            for (std::size_t b = 0; b < fy; ++b) {
                for (std::size_t a = 0; a < factor; ++a) {
                    s += fine.at(i * factor + a, j * fy + b);
                }
            }
            out.at(i, j) = s * weight;
        }
    }
    return out;
}

}  // namespace itolab
