#include "itolab/density.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "itolab/errors.hpp"
#include "itolab/parallel.hpp"

namespace itolab {

namespace {

constexpr std::size_t kOutside = static_cast<std::size_t>(-1);

std::size_t bin_index(const GridSpec& g, std::size_t axis, double v) {
    const double lo = g.lo[axis];
    const double hi = g.hi[axis];
    const std::size_t n = g.cells[axis];
    if (!(v >= lo) || !(v <= hi)) {
        return kOutside;
    }
    if (v == hi) {
        return n - 1;
    }
    auto k = static_cast<std::size_t>(std::floor((v - lo) / g.spacing(axis)));
    k = std::min(k, n - 1);
    // The floor can land one bin off near an edge; the edges decide.
    if (v < g.edge(axis, k) && k > 0) {
        --k;
    } else if (k + 1 < n && v >= g.edge(axis, k + 1)) {
        ++k;
    }
    return k;
}

void check_same_grid(const ScalarGrid& p, const ScalarGrid& q) {
    if (!(p.spec == q.spec) || p.values.size() != q.values.size()) {
        throw DimensionError("grid distance: grids differ");
    }
}

}  // namespace

HistogramResult histogram_density(std::span<const double> samples, const HistogramSpec& spec,
                                  unsigned workers) {
    spec.validate();
    const GridSpec& g = spec.grid;
    const std::size_t d = g.dim();
    if (samples.empty()) {
        throw InvalidParameter("histogram_density: empty sample set");
    }
    if (samples.size() % d != 0) {
        throw DimensionError("histogram_density: sample matrix width does not match the bins");
    }
    const std::size_t n = samples.size() / d;
    const std::size_t n_chunks = std::min<std::size_t>(resolve_workers(workers), n);
    std::vector<std::vector<std::size_t>> counts(n_chunks, std::vector<std::size_t>(g.size(), 0));
    std::vector<std::size_t> dropped(n_chunks, 0);
    parallel_for(n_chunks, workers, [&](std::size_t c) {
        auto& local = counts[c];
        for (std::size_t s = n * c / n_chunks; s < n * (c + 1) / n_chunks; ++s) {
            const std::size_t i = bin_index(g, 0, samples[s * d]);
            const std::size_t j = d == 2 ? bin_index(g, 1, samples[s * d + 1]) : 0;
            if (i == kOutside || j == kOutside) {
                ++dropped[c];
            } else {
                ++local[j * g.cells[0] + i];
            }
        }
    });

    HistogramResult out{ScalarGrid(g), 0.0};
    std::vector<std::size_t> total(g.size(), 0);
    std::size_t n_dropped = 0;
    for (std::size_t c = 0; c < n_chunks; ++c) {
        for (std::size_t k = 0; k < total.size(); ++k) total[k] += counts[c][k];
        n_dropped += dropped[c];
    }
    const double scale = 1.0 / (static_cast<double>(n) * g.cell_volume());
    for (std::size_t k = 0; k < total.size(); ++k) {
        out.density.values[k] = static_cast<double>(total[k]) * scale;
    }
    out.dropped_fraction = static_cast<double>(n_dropped) / static_cast<double>(n);
    return out;
}

double l1_distance(const ScalarGrid& p, const ScalarGrid& q) {
    check_same_grid(p, q);
    double s = 0.0;
    for (std::size_t k = 0; k < p.values.size(); ++k) s += std::fabs(p.values[k] - q.values[k]);
    return s * p.spec.cell_volume();
}

double l2_distance(const ScalarGrid& p, const ScalarGrid& q) {
    check_same_grid(p, q);
    double s = 0.0;
    for (std::size_t k = 0; k < p.values.size(); ++k) {
        const double e = p.values[k] - q.values[k];
        s += e * e;
    }
    return std::sqrt(s * p.spec.cell_volume());
}

double sup_distance(const ScalarGrid& p, const ScalarGrid& q) {
    check_same_grid(p, q);
    double m = 0.0;
    for (std::size_t k = 0; k < p.values.size(); ++k) {
        m = std::max(m, std::fabs(p.values[k] - q.values[k]));
    }
    return m;
}

std::vector<double> draw_samples(const Sampler& sampler, std::size_t n, std::size_t dim,
                                 std::uint64_t seed, unsigned workers) {
    std::vector<double> out(n * dim);
    parallel_for(n, workers, [&](std::size_t i) {
        RngStream stream(seed, i);
        sampler(stream, std::span<double>(out.data() + i * dim, dim));
    });
    return out;
}

double noise_floor(const Sampler& sampler, std::size_t n_samples, const HistogramSpec& spec,
                   std::uint64_t seed_a, std::uint64_t seed_b, unsigned workers) {
    return noise_floor(sampler, sampler, n_samples, spec, seed_a, seed_b, workers);
}

double noise_floor(const Sampler& sampler_a, const Sampler& sampler_b, std::size_t n_samples,
                   const HistogramSpec& spec, std::uint64_t seed_a, std::uint64_t seed_b,
                   unsigned workers) {
    spec.validate();
    if (n_samples == 0) {
        throw InvalidParameter("noise_floor: n_samples must be positive");
    }
    const std::size_t d = spec.grid.dim();
    const auto a = histogram_density(draw_samples(sampler_a, n_samples, d, seed_a, workers), spec,
                                     workers);
    const auto b = histogram_density(draw_samples(sampler_b, n_samples, d, seed_b, workers), spec,
                                     workers);
    return l1_distance(a.density, b.density);
}

}  // namespace itolab
