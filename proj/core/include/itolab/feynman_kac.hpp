#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "itolab/expr.hpp"
#include "itolab/fields.hpp"
#include "itolab/stats.hpp"

namespace itolab {

/// E[exp(-int_t0^T V(s, X_s) ds) g(X_T) | X_t0 = x].
struct FkQuery {
    FieldSpec fields;
    FieldExpr potential;
    FieldExpr payoff;
    double t0 = 0.0;
    double T = 1.0;
    std::vector<double> x;
    std::size_t n_paths = 1000;
    std::size_t n_steps = 100;
    std::uint64_t seed = 0;
    unsigned workers = 0;

    void validate() const;
};

// Per-path weighted payoffs; path i uses RngStream(seed, i) and Euler–Maruyama
// from x. The potential integral is the left-endpoint sum on the step grid.
std::vector<double> fk_samples(const FkQuery& q);

EstimateWithError fk_estimate(const FkQuery& q);

}  // namespace itolab
