#pragma once

#include <cstddef>
#include <span>

namespace itolab {

/// Monte Carlo point estimate.
struct EstimateWithError {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
};

// Welford accumulator. A constant input sequence yields that constant as the
// mean and exactly zero variance.
class RunningStats {
public:
    void push(double value) noexcept;

    std::size_t count() const noexcept { return n_; }
    double mean() const noexcept { return mean_; }
    // Unbiased sample variance; 0 when count < 2.
    double variance() const noexcept;
    double standard_error() const noexcept;

    EstimateWithError estimate() const noexcept;

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

// Accumulates in index order.
EstimateWithError estimate_of(std::span<const double> values) noexcept;

// Pearson sample correlation; 0 when either side has zero variance.
double sample_correlation(std::span<const double> a, std::span<const double> b);

// Least-squares slope of y on x.
double regression_slope(std::span<const double> x, std::span<const double> y);

}  // namespace itolab
