#include "itolab/path.hpp"

#include <cmath>

#include "itolab/errors.hpp"

namespace itolab {

Path::Path(double T, std::size_t n_steps, std::size_t dim, std::vector<double> states)
    : states_(std::move(states)), dim_(dim) {
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw InvalidParameter("path horizon must be positive and finite");
    }
    if (n_steps == 0) {
        throw InvalidParameter("path needs at least one step");
    }
    if (dim == 0) {
        throw InvalidParameter("path dimension must be positive");
    }
    if (states_.size() != (n_steps + 1) * dim) {
        throw DimensionError("path states do not match (n_steps + 1) * dim");
    }
    dt_ = T / static_cast<double>(n_steps);
    times_.resize(n_steps + 1);
    for (std::size_t i = 0; i <= n_steps; ++i) {
        times_[i] = T * static_cast<double>(i) / static_cast<double>(n_steps);
    }
}

bool Path::same_grid(const Path& other) const noexcept {
    return n_nodes() == other.n_nodes() && dt_ == other.dt_;
}

Path brownian_path(RngStream& stream, std::span<const double> x0, double T, std::size_t n_steps) {
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw InvalidParameter("brownian_path: T must be positive");
    }
    if (n_steps == 0) {
        throw InvalidParameter("brownian_path: n_steps must be >= 1");
    }
    const std::size_t d = x0.size();
    if (d == 0) {
        throw InvalidParameter("brownian_path: dimension must be positive");
    }
    const double sqrt_dt = std::sqrt(T / static_cast<double>(n_steps));

    std::vector<double> states((n_steps + 1) * d);
    std::vector<double> running(d, 0.0);
    for (std::size_t k = 0; k < d; ++k) {
        states[k] = x0[k];
    }
    for (std::size_t i = 1; i <= n_steps; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
            running[k] += sqrt_dt * stream.standard_normal();
            states[i * d + k] = x0[k] + running[k];
        }
    }
    return Path(T, n_steps, d, std::move(states));
}

}  // namespace itolab
