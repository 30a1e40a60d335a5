#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "itolab/expr.hpp"

namespace itolab {

/// Coefficients of dX = mu(t, X) dt + sigma(t, X) dW with X in R^d, W in R^m.
struct FieldSpec {
    std::vector<FieldExpr> drift;                   // length d
    std::vector<std::vector<FieldExpr>> diffusion;  // d rows x m columns
    std::optional<FieldExpr> potential;
    std::optional<FieldExpr> payoff;

    std::size_t dim() const noexcept { return drift.size(); }
    std::size_t noise_dim() const noexcept { return diffusion.empty() ? 0 : diffusion.front().size(); }

    // Throws DimensionError when d, m are inconsistent or outside 1..2.
    void validate() const;

    // d == m and every off-diagonal entry is the constant 0.
    bool diagonal_diffusion() const;
    bool depends_on_time() const;

    void eval_drift(std::span<const double> x, double t, std::span<double> out) const;
    // Row-major d x m.
    void eval_diffusion(std::span<const double> x, double t, std::span<double> out) const;
    // a = sigma sigma^T, row-major d x d.
    void eval_diffusion_tensor(std::span<const double> x, double t, std::span<double> out) const;
};

// Builds and validates a spec from expression strings.
FieldSpec make_field_spec(const std::vector<std::string>& drift,
                          const std::vector<std::vector<std::string>>& diffusion);

// mu = 0, sigma = I_d.
FieldSpec brownian_fields(std::size_t d);

}  // namespace itolab
