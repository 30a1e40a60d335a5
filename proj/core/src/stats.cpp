#include "itolab/stats.hpp"

#include <cmath>

#include "itolab/errors.hpp"

namespace itolab {

void RunningStats::push(double value) noexcept {
    ++n_;
    const double delta = value - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (value - mean_);
}

double RunningStats::variance() const noexcept {
    return n_ < 2 ? 0.0 : m2_ / static_cast<double>(n_ - 1);
}

double RunningStats::standard_error() const noexcept {
    return n_ == 0 ? 0.0 : std::sqrt(variance() / static_cast<double>(n_));
}

EstimateWithError RunningStats::estimate() const noexcept {
    return {mean_, standard_error(), n_};
}

EstimateWithError estimate_of(std::span<const double> values) noexcept {
    RunningStats stats;
    for (double v : values) {
        stats.push(v);
    }
    return stats.estimate();
}

double sample_correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw DimensionError("sample_correlation: length mismatch");
    }
    if (a.size() < 2) {
        throw InvalidParameter("sample_correlation: need at least two samples");
    }
    RunningStats sa;
    RunningStats sb;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sa.push(a[i]);
        sb.push(b[i]);
    }
    double cov = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        cov += (a[i] - sa.mean()) * (b[i] - sb.mean());
    }
    cov /= static_cast<double>(a.size() - 1);
    const double denom = std::sqrt(sa.variance() * sb.variance());
    return denom > 0.0 ? cov / denom : 0.0;
}

double regression_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw DimensionError("regression_slope: length mismatch");
    }
    if (x.size() < 2) {
        throw InvalidParameter("regression_slope: need at least two points");
    }
    const double n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) {
        throw InvalidParameter("regression_slope: x values are all equal");
    }
    return sxy / sxx;
}

}  // namespace itolab
