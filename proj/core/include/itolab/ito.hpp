#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "itolab/expr.hpp"
#include "itolab/fields.hpp"
#include "itolab/path.hpp"

namespace itolab {

// Two-sided pass threshold of every statistical check, in standard errors.
inline constexpr double kSigmaTolerance = 4.0;

/// Integrand values f(t_i) sampled on a path grid, one entry per node.
///
/// The scalar case has rows = cols = 1. The matrix case stores an n x d
/// matrix per node (row-major), integrated against a d-dimensional path.
/// The value at the last node is never used (left-endpoint sums).
struct Integrand {
    std::size_t nodes = 0;
    std::size_t rows = 1;
    std::size_t cols = 1;
    std::vector<double> values;

    static Integrand scalar(std::vector<double> values);
    static Integrand matrix(std::size_t nodes, std::size_t rows, std::size_t cols,
                            std::vector<double> values);

    double at(std::size_t node, std::size_t r = 0, std::size_t c = 0) const noexcept {
        return values[(node * rows + r) * cols + c];
    }
};

// Left-endpoint Ito sum; returns one entry per integrand row.
std::vector<double> ito_integral(const Integrand& f, const Path& w);
// Scalar convenience: f has one value per node of the 1D path w.
double ito_integral(std::span<const double> f, const Path& w);

// Sum of dX_i * dY_i for aligned 1D paths.
double quadratic_covariation(const Path& x, const Path& y);

// Residual scaling: absolute when |expected| < 1, relative otherwise.
inline double scaled_residual(double residual, double expected) noexcept {
    const double scale = expected < 0.0 ? -expected : expected;
    return residual / (scale < 1.0 ? 1.0 : scale);
}

// |X_T Y_T - X_0 Y_0 - sum X_i dY_i - sum Y_i dX_i - sum dX_i dY_i|, scaled.
double integration_by_parts_residual(const Path& x, const Path& y);

/// How the second-order term of the discrete Ito formula is formed.
///   Expected: 1/2 tr(sigma sigma^T Hf) dt, the formula as stated.
///   Realized: 1/2 (sigma dW)^T Hf (sigma dW), exact for quadratic f.
enum class QuadraticTerm { Expected, Realized };

/// f with analytic derivatives, all as expressions in (x, y, t).
struct TestFunction {
    FieldExpr f;
    std::vector<FieldExpr> gradient;  // length d
    std::vector<FieldExpr> hessian;   // d x d, row-major
    std::optional<FieldExpr> time_derivative;
};

// |f(T,X_T) - f(0,X_0) - sum[f_t + grad f . mu + q_i] dt - sum grad f . sigma dW|, scaled.
// x is the Ito path, w the Brownian path that drove it (same grid).
double ito_formula_residual(const Path& x, const Path& w, const FieldSpec& fields,
                            const TestFunction& tf, QuadraticTerm mode = QuadraticTerm::Expected);

// ---------------------------------------------------------------------------
// Seeded statistical checks. Path i is brownian_path(RngStream(seed, i), 0, T, n_steps).

struct StatCheckConfig {
    double T = 1.0;
    std::size_t n_steps = 1000;
    std::size_t n_paths = 10000;
    std::uint64_t seed = 1;
    unsigned workers = 0;
};

struct IsometryReport {
    double mc_lhs = 0.0;        // mean of I(f)^2
    double analytic_rhs = 0.0;  // sum f(t_i)^2 dt
    double std_error = 0.0;
    std::size_t n_paths = 0;
    bool pass = false;
};

IsometryReport check_isometry(const std::function<double(double)>& f, const StatCheckConfig& cfg);

// Integrand value at node i from (t_i, W_{t_i}).
using AdaptedIntegrand = std::function<double(double t, double w)>;

struct CheckpointMean {
    double t = 0.0;
    double mean = 0.0;
    double std_error = 0.0;
    bool pass = false;
};

struct IncrementCorrelation {
    double s = 0.0;
    double t = 0.0;
    double correlation = 0.0;  // corr(M_s, M_t - M_s)
    double bound = 0.0;        // 4 / sqrt(n_paths)
    bool pass = false;
};

struct MartingaleReport {
    std::vector<CheckpointMean> checkpoints;
    std::vector<IncrementCorrelation> increments;
    bool pass = false;
};

MartingaleReport check_martingale_zero_mean(const AdaptedIntegrand& f, const StatCheckConfig& cfg,
                                            std::span<const double> checkpoints);

struct QuadraticVariationReport {
    double mc_mean = 0.0;       // mean of [M, M]_T
    double analytic = 0.0;      // sum f(t_i)^2 dt
    double std_error = 0.0;
    double max_identity_residual = 0.0;  // [M, M]_T vs sum f^2 dW^2, per path
    bool pass = false;
};

// Quadratic variation of the running Ito sum of a deterministic integrand.
QuadraticVariationReport check_quadratic_variation(const std::function<double(double)>& f,
                                                   const StatCheckConfig& cfg);

struct IdentityReport {
    double max_linearity_residual = 0.0;
    double max_wdw_residual = 0.0;  // int W dW = (W_T^2 - W_0^2 - sum dW^2) / 2
    bool pass = false;
};

// Per-path exact identities with a = 2, b = -3, f(t) = t, g = W.
IdentityReport check_exact_identities(const StatCheckConfig& cfg, double tolerance = 1e-12);

}  // namespace itolab
