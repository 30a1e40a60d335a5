#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

#include "itolab/grid.hpp"
#include "itolab/rng.hpp"

namespace itolab {

/// Histogram bins over a box. Samples outside the box are dropped and counted.
struct HistogramSpec {
    GridSpec grid;

    void validate() const { grid.validate(); }
};

struct HistogramResult {
    ScalarGrid density;  // count / (n * cell volume)
    double dropped_fraction = 0.0;
};

/// Bins are half-open [edge_k, edge_{k+1}); the last bin of each axis is
/// closed on top. Samples are rows of an n x d row-major matrix.
HistogramResult histogram_density(std::span<const double> samples, const HistogramSpec& spec,
                                  unsigned workers = 1);

// sum |p - q| * cell volume
double l1_distance(const ScalarGrid& p, const ScalarGrid& q);
// sqrt(sum (p - q)^2 * cell volume)
double l2_distance(const ScalarGrid& p, const ScalarGrid& q);
// max |p - q|
double sup_distance(const ScalarGrid& p, const ScalarGrid& q);

// Draws one sample of dimension out.size().
using Sampler = std::function<void(RngStream&, std::span<double>)>;

// Draws n samples; sample i uses RngStream(seed, i).
std::vector<double> draw_samples(const Sampler& sampler, std::size_t n, std::size_t dim,
                                 std::uint64_t seed, unsigned workers = 1);

/// L1 distance between two independent n-sample histograms of the same law.
double noise_floor(const Sampler& sampler, std::size_t n_samples, const HistogramSpec& spec,
                   std::uint64_t seed_a, std::uint64_t seed_b, unsigned workers = 1);

// Same with a separate sampler per histogram.
double noise_floor(const Sampler& sampler_a, const Sampler& sampler_b, std::size_t n_samples,
                   const HistogramSpec& spec, std::uint64_t seed_a, std::uint64_t seed_b,
                   unsigned workers = 1);

}  // namespace itolab
