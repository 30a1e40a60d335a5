#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "itolab/fields.hpp"
#include "itolab/path.hpp"
#include "itolab/rng.hpp"

namespace itolab {

// Paths abort once the Euclidean norm of the state exceeds this.
inline constexpr double kOverflowNorm = 1e12;

/// Ito SDE dX = mu dt + sigma dW on [t0, t0 + T] from a fixed x0.
struct SdeProblem {
    FieldSpec fields;
    std::vector<double> x0;
    double T = 1.0;
    std::size_t n_steps = 1;
    double t0 = 0.0;

    void validate() const;
};

/// Euler–Maruyama: X_{i+1} = X_i + mu(t_i, X_i) dt + sigma(t_i, X_i) dW_i.
///
/// Noise is drawn as m standard normals per step, in step-major order,
/// scaled by sqrt(dt). Path times are relative to t0. Throws SimulationError
/// carrying the step index on a field evaluation failure or overflow.
Path euler_maruyama(const SdeProblem& problem, RngStream& stream);

struct DrivenPath {
    Path x;
    Path w;  // driving Brownian motion, m-dimensional, W_0 = 0
};

DrivenPath euler_maruyama_driven(const SdeProblem& problem, RngStream& stream);

// Scheme driven by caller-supplied increments, n_steps x m row-major.
Path euler_maruyama_increments(const SdeProblem& problem, std::span<const double> increments);

// s0 * exp((mu - sigma^2 / 2) t + sigma w_t).
double gbm_exact(double s0, double mu, double sigma, double t, double w_t);

// Fields of dS = mu S dt + sigma S dW.
FieldSpec gbm_fields(double mu, double sigma);

enum class StorageKind { TerminalOnly, FullPaths, Thinned };

struct StoragePolicy {
    StorageKind kind = StorageKind::TerminalOnly;
    std::size_t thin = 1;  // Thinned keeps every thin-th node plus the last
};

/// N paths of one problem; path i uses RngStream(seed, i).
struct Ensemble {
    SdeProblem problem;
    std::size_t n_paths = 1;
    std::uint64_t seed = 0;
    StoragePolicy storage;
    unsigned workers = 0;  // 0 = hardware concurrency; never affects results
};

struct EnsembleResult {
    std::size_t n_paths = 0;
    std::size_t dim = 0;
    std::vector<double> terminals;  // n_paths x dim, row-major
    // Stored node indices and their states, when the policy keeps paths.
    std::vector<std::size_t> stored_nodes;
    std::vector<std::vector<double>> stored_states;  // per path: stored_nodes.size() x dim

    std::span<const double> terminal(std::size_t path) const noexcept {
        return {terminals.data() + path * dim, dim};
    }
};

// Fail-fast: the error of the lowest failing path_id is rethrown with its id.
EnsembleResult simulate_ensemble(const Ensemble& ensemble);

/// Numerical probe of the Lipschitz and linear-growth hypotheses.
struct Box {
    std::vector<double> lo;
    std::vector<double> hi;
};

struct CoefficientReport {
    double lip_mu = 0.0;
    double lip_sigma = 0.0;
    double growth_mu = 0.0;
    double growth_sigma = 0.0;
    std::vector<std::string> warnings;
};

CoefficientReport validate_coefficients(const FieldSpec& fields, const Box& box, std::size_t n_probe,
                                        double cap = 100.0, std::uint64_t seed = 0);

}  // namespace itolab
