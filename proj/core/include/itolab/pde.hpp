#pragma once

#include <cstddef>
#include <variant>

#include "itolab/expr.hpp"
#include "itolab/fields.hpp"
#include "itolab/grid.hpp"

namespace itolab {

// Initial (or terminal) data: a grid matching the solver grid, or an
// expression sampled at cell centers.
using GridInit = std::variant<ScalarGrid, FieldExpr>;

/// Time stepping actually used. The requested n_t steps are split into
/// 2^substep_exponent substeps each when the explicit stability bound needs it.
struct PdeRunInfo {
    std::size_t substep_exponent = 0;
    std::size_t steps_taken = 0;
    double dt = 0.0;
};

struct HeatResult {
    ScalarGrid grid;
    PdeRunInfo info;
};

/// FTCS for u_t = kappa * Laplacian(u) with homogeneous Neumann boundaries.
/// Stability: kappa * dt * sum(1 / dx_i^2) <= 1/2.
HeatResult solve_heat(const GridInit& f0, double kappa, double T, const GridSpec& grid,
                      std::size_t n_t, unsigned workers = 1);

struct FpProblem {
    FieldSpec fields;  // drift b, diffusion sigma; a = sigma sigma^T
    GridInit p0;       // normalized to unit mass before stepping
    double T = 1.0;
    std::size_t n_t = 1;
    GridSpec grid;
};

struct FpResult {
    ScalarGrid grid;
    PdeRunInfo info;
    double relative_mass_drift = 0.0;  // |m_T - m_0| / m_0 before clipping
    double min_before_clip = 0.0;
    double clipped_mass = 0.0;         // negative mass removed, relative to the total
};

/// Conservative explicit scheme for p_t = -div(b p) + 1/2 sum_ij d_i d_j (a_ij p).
///
/// Face fluxes F_i = b_i p - 1/2 sum_j d_j (a_ij p) use central differences,
/// with the mixed term on the 4-point cross stencil. Boundary faces carry zero
/// flux, so the discrete mass is constant up to rounding. Stability per step:
/// max(a_ii) dt / dx_i^2 <= 1/4 and max|b_i| dt / dx_i <= 1/2. Negative
/// undershoot is clipped once at the end and the grid renormalized.
FpResult solve_fokker_planck(const FpProblem& problem, unsigned workers = 1);

struct BackwardResult {
    ScalarGrid grid;  // u(0, .)
    PdeRunInfo info;
};

/// u_t + L u - V u = 0 on [0, T] with u(T, .) = g, for 1D fields.
///
/// Steps in time-to-go tau = T - t: explicit u + dtau * L u for the generator
/// part, then multiplication by exp(-V dtau). Neumann boundaries; same
/// stability bound as the forward solver with a = sigma^2.
BackwardResult solve_backward_fk(const FieldSpec& fields, const FieldExpr& potential,
                                 const FieldExpr& payoff, double T, const GridSpec& grid,
                                 std::size_t n_t, unsigned workers = 1);

// Samples an expression at the cell centers of a grid (t = 0).
ScalarGrid sample_on_grid(const FieldExpr& f, const GridSpec& grid);

}  // namespace itolab
