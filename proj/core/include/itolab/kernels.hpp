#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "itolab/expr.hpp"
#include "itolab/fields.hpp"
#include "itolab/stats.hpp"

namespace itolab {

/// Kernel of u_t = kappa * Laplacian(u) at time t in d dimensions.
/// kappa = 1 is the plain heat equation; kappa = 1/2 is the Brownian one.
struct HeatKernelParams {
    double kappa = 1.0;
    double t = 1.0;
    std::size_t dimension = 1;

    void validate() const;
    // Per-axis variance 2 kappa t.
    double variance() const noexcept { return 2.0 * kappa * t; }
};

// (2 pi t)^(-d/2) exp(-|y - x|^2 / (2 t)).
double bm_transition_density(double t, std::span<const double> x, std::span<const double> y);

// (4 pi kappa t)^(-d/2) exp(-|y - x|^2 / (4 kappa t)).
double heat_kernel(const HeatKernelParams& k, std::span<const double> x, std::span<const double> y);

// |p(s+t, x, y) - int p(s, x, z) p(t, z, y) dz| over z in x -/+ 10 sqrt(s + t).
double chapman_kolmogorov_gap(double s, double t, double x, double y);

// Convolution of f with the heat kernel, window x -/+ 10 sqrt(2 kappa t) per axis.
// 1D uses adaptive composite Gauss–Legendre; 2D a 400 x 400 tensor rule.
double heat_solution(const FieldExpr& f, std::span<const double> x, const HeatKernelParams& k);

// Monte Carlo mean of f(x + sqrt(2 kappa) W_t) over n_paths Brownian paths with
// n_steps steps each; path i uses RngStream(seed, i).
EstimateWithError stochastic_representation(const FieldExpr& f, std::span<const double> x, double t,
                                            double kappa, std::size_t n_paths, std::uint64_t seed,
                                            std::size_t n_steps = 1, unsigned workers = 0);

// b . grad f + 1/2 sum_ij (sigma sigma^T)_ij d_ij f, derivatives by central differences.
double apply_generator(const FieldSpec& fields, const FieldExpr& f, std::span<const double> x,
                       double t = 0.0);

struct GeneratorGap {
    double gap = 0.0;          // |rate - A f(x)|
    double rate = 0.0;         // (E f(X_h) - f(x)) / h
    double generator = 0.0;    // A f(x)
    double std_error = 0.0;    // of rate
};

/// Short-time rate of E f(X_h) against the generator.
///
/// X_h is simulated by Euler–Maruyama with n_substeps steps. The estimator
/// subtracts the discrete stochastic integral sum grad f(X_i) . sigma dW_i,
/// which has mean zero, so the Monte Carlo noise of the rate stays below the
/// O(h) bias being measured.
GeneratorGap generator_limit_gap(const FieldSpec& fields, const FieldExpr& f,
                                 std::span<const double> x, double h, std::size_t n_paths,
                                 std::uint64_t seed, std::size_t n_substeps = 16,
                                 unsigned workers = 0);

}  // namespace itolab
