#include "itolab/feynman_kac.hpp"

#include <cmath>
#include <string>

#include "itolab/errors.hpp"
#include "itolab/parallel.hpp"
#include "itolab/sde.hpp"

namespace itolab {

void FkQuery::validate() const {
    fields.validate();
    if (!std::isfinite(t0) || !std::isfinite(T) || t0 < 0.0 || !(T > t0)) {
        throw InvalidParameter("fk query: need 0 <= t0 < T");
    }
    if (x.size() != fields.dim()) {
        throw DimensionError("fk query: x has " + std::to_string(x.size()) +
                             " components, fields have " + std::to_string(fields.dim()));
    }
    if (n_paths == 0 || n_steps == 0) {
        throw InvalidParameter("fk query: n_paths and n_steps must be positive");
    }
    // Payoff must be finite around the start point.
    std::vector<double> lo(x.size()), hi(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        lo[k] = x[k] - 5.0;
        hi[k] = x[k] + 5.0;
    }
    check_finite_on_box(payoff, lo, hi, 11, T);
}

std::vector<double> fk_samples(const FkQuery& q) {
    q.validate();
    const SdeProblem problem{q.fields, q.x, q.T - q.t0, q.n_steps, q.t0};
    const double ds = (q.T - q.t0) / static_cast<double>(q.n_steps);
    std::vector<double> out(q.n_paths);
    parallel_for(q.n_paths, q.workers, [&](std::size_t p) {
        RngStream stream(q.seed, p);
        Path path;
        try {
            path = euler_maruyama(problem, stream);
        } catch (const SimulationError& e) {
            throw SimulationError("path " + std::to_string(p) + ": " + e.what(), e.step(), p);
        }
        double integral = 0.0;
        try {
            for (std::size_t i = 0; i < q.n_steps; ++i) {
                const double t = q.t0 + (q.T - q.t0) * static_cast<double>(i) /
                                            static_cast<double>(q.n_steps);
                integral += q.potential.eval_state(path.state(i), t);
            }
            out[p] = std::exp(-integral * ds) * q.payoff.eval_state(path.terminal(), q.T);
        } catch (const EvalError& e) {
            throw SimulationError("path " + std::to_string(p) + ": " + e.what(), q.n_steps, p);
        }
    });
    return out;
}

EstimateWithError fk_estimate(const FkQuery& q) {
    const auto samples = fk_samples(q);
    return estimate_of(samples);
}

}  // namespace itolab
