#include "itolab/sde.hpp"

#include <cmath>
#include <cstdio>

#include "itolab/errors.hpp"
#include "itolab/parallel.hpp"

namespace itolab {

void SdeProblem::validate() const {
    fields.validate();
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw InvalidParameter("sde problem: T must be positive");
    }
    if (n_steps == 0) {
        throw InvalidParameter("sde problem: n_steps must be >= 1");
    }
    if (x0.size() != fields.dim()) {
        throw DimensionError("sde problem: x0 has " + std::to_string(x0.size()) +
                             " components, fields have " + std::to_string(fields.dim()));
    }
}

namespace {

// Advances the scheme; next_noise(step, dw) fills m increments for the step.
template <typename Noise>
std::vector<double> run_scheme(const SdeProblem& problem, Noise&& next_noise,
                               std::vector<double>* driving) {
    const std::size_t d = problem.fields.dim();
    const std::size_t m = problem.fields.noise_dim();
    const std::size_t n = problem.n_steps;
    const double dt = problem.T / static_cast<double>(n);
    const bool diagonal = problem.fields.diagonal_diffusion();

    std::vector<double> states((n + 1) * d);
    std::copy(problem.x0.begin(), problem.x0.end(), states.begin());
    if (driving) {
        driving->assign((n + 1) * m, 0.0);
    }

    double mu[2];
    double sigma[4];
    double dw[2];
    for (std::size_t i = 0; i < n; ++i) {
        const std::span<const double> x(states.data() + i * d, d);
        const double t = problem.t0 + problem.T * static_cast<double>(i) / static_cast<double>(n);
        next_noise(i, std::span<double>(dw, m));
        try {
            problem.fields.eval_drift(x, t, std::span<double>(mu, d));
            if (diagonal) {
                for (std::size_t k = 0; k < d; ++k) {
                    sigma[k * m + k] = problem.fields.diffusion[k][k].eval_state(x, t);
                }
            } else {
                problem.fields.eval_diffusion(x, t, std::span<double>(sigma, d * m));
            }
        } catch (const EvalError& e) {
            throw SimulationError("field evaluation failed at step " + std::to_string(i) + ": " +
                                      e.what(),
                                  i);
        }
        double* next = states.data() + (i + 1) * d;
        double norm2 = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            double noise = 0.0;
            if (diagonal) {
                noise = sigma[k * m + k] * dw[k];
            } else {
                for (std::size_t c = 0; c < m; ++c) noise += sigma[k * m + c] * dw[c];
            }
            next[k] = x[k] + mu[k] * dt + noise;
            norm2 += next[k] * next[k];
        }
        if (!std::isfinite(norm2) || std::sqrt(norm2) > kOverflowNorm) {
            throw SimulationError("state overflow (|X| > 1e12) at step " + std::to_string(i + 1), i + 1);
        }
        if (driving) {
            for (std::size_t c = 0; c < m; ++c) {
                (*driving)[(i + 1) * m + c] = (*driving)[i * m + c] + dw[c];
            }
        }
    }
    return states;
}

auto stream_noise(RngStream& stream, double sqrt_dt) {
    return [&stream, sqrt_dt](std::size_t, std::span<double> dw) {
        for (double& v : dw) v = sqrt_dt * stream.standard_normal();
    };
}

}  // namespace

Path euler_maruyama(const SdeProblem& problem, RngStream& stream) {
    problem.validate();
    const double sqrt_dt = std::sqrt(problem.T / static_cast<double>(problem.n_steps));
    auto states = run_scheme(problem, stream_noise(stream, sqrt_dt), nullptr);
    return Path(problem.T, problem.n_steps, problem.fields.dim(), std::move(states));
}

DrivenPath euler_maruyama_driven(const SdeProblem& problem, RngStream& stream) {
    problem.validate();
    const double sqrt_dt = std::sqrt(problem.T / static_cast<double>(problem.n_steps));
    std::vector<double> driving;
    auto states = run_scheme(problem, stream_noise(stream, sqrt_dt), &driving);
    return {Path(problem.T, problem.n_steps, problem.fields.dim(), std::move(states)),
            Path(problem.T, problem.n_steps, problem.fields.noise_dim(), std::move(driving))};
}

Path euler_maruyama_increments(const SdeProblem& problem, std::span<const double> increments) {
    problem.validate();
    const std::size_t m = problem.fields.noise_dim();
    if (increments.size() != problem.n_steps * m) {
        throw DimensionError("euler_maruyama_increments: expected n_steps * m increments");
    }
    auto states = run_scheme(
        problem,
        [&](std::size_t i, std::span<double> dw) {
            for (std::size_t c = 0; c < m; ++c) dw[c] = increments[i * m + c];
        },
        nullptr);
    return Path(problem.T, problem.n_steps, problem.fields.dim(), std::move(states));
}

double gbm_exact(double s0, double mu, double sigma, double t, double w_t) {
    if (!(s0 > 0.0)) {
        throw InvalidParameter("gbm_exact: s0 must be positive");
    }
    return s0 * std::exp((mu - 0.5 * sigma * sigma) * t + sigma * w_t);
}

namespace {

std::string format_coefficient(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

FieldSpec gbm_fields(double mu, double sigma) {
    const std::string m = format_coefficient(mu);
    const std::string s = format_coefficient(sigma);
    return make_field_spec({"(" + m + ")*x"}, {{"(" + s + ")*x"}});
}

EnsembleResult simulate_ensemble(const Ensemble& ensemble) {
    const SdeProblem& problem = ensemble.problem;
    problem.validate();
    if (ensemble.n_paths == 0) {
        throw InvalidParameter("simulate_ensemble: n_paths must be positive");
    }
    if (ensemble.storage.kind == StorageKind::Thinned && ensemble.storage.thin == 0) {
        throw InvalidParameter("simulate_ensemble: thinning factor must be positive");
    }
    const std::size_t d = problem.fields.dim();
    const std::size_t n = problem.n_steps;

    EnsembleResult result;
    result.n_paths = ensemble.n_paths;
    result.dim = d;
    result.terminals.assign(ensemble.n_paths * d, 0.0);
    if (ensemble.storage.kind != StorageKind::TerminalOnly) {
        const std::size_t thin =
            ensemble.storage.kind == StorageKind::FullPaths ? 1 : ensemble.storage.thin;
        for (std::size_t i = 0; i <= n; i += thin) result.stored_nodes.push_back(i);
        if (result.stored_nodes.back() != n) result.stored_nodes.push_back(n);
        result.stored_states.resize(ensemble.n_paths);
    }

    const double sqrt_dt = std::sqrt(problem.T / static_cast<double>(n));
    parallel_for(ensemble.n_paths, ensemble.workers, [&](std::size_t p) {
        RngStream stream(ensemble.seed, p);
        std::vector<double> states;
        try {
            states = run_scheme(problem, stream_noise(stream, sqrt_dt), nullptr);
        } catch (const SimulationError& e) {
            throw SimulationError("path " + std::to_string(p) + ": " + e.what(), e.step(), p);
        }
        std::copy(states.begin() + static_cast<std::ptrdiff_t>(n * d), states.end(),
                  result.terminals.begin() + static_cast<std::ptrdiff_t>(p * d));
        if (!result.stored_nodes.empty()) {
            auto& kept = result.stored_states[p];
            kept.reserve(result.stored_nodes.size() * d);
            for (std::size_t node : result.stored_nodes) {
                kept.insert(kept.end(), states.begin() + static_cast<std::ptrdiff_t>(node * d),
                            states.begin() + static_cast<std::ptrdiff_t>((node + 1) * d));
            }
        }
    });
    return result;
}

CoefficientReport validate_coefficients(const FieldSpec& fields, const Box& box, std::size_t n_probe,
                                        double cap, std::uint64_t seed) {
    fields.validate();
    const std::size_t d = fields.dim();
    const std::size_t m = fields.noise_dim();
    if (box.lo.size() != d || box.hi.size() != d) {
        throw DimensionError("validate_coefficients: box dimension does not match the fields");
    }
    for (std::size_t k = 0; k < d; ++k) {
        if (!(box.hi[k] > box.lo[k]) || !std::isfinite(box.hi[k] - box.lo[k])) {
            throw InvalidParameter("validate_coefficients: box must be bounded and non-degenerate");
        }
    }
    if (n_probe < 100) {
        throw InvalidParameter("validate_coefficients: n_probe must be >= 100");
    }

    CoefficientReport report;
    RngStream stream(seed, 0);
    std::vector<double> x(d), y(d), mx(d), my(d), sx(d * m), sy(d * m);
    auto norm = [](std::span<const double> v) {
        double s = 0.0;
        for (double e : v) s += e * e;
        return std::sqrt(s);
    };
    auto diff_norm = [](std::span<const double> a, std::span<const double> b) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
        return std::sqrt(s);
    };
    std::size_t eval_failures = 0;
    for (std::size_t k = 0; k < n_probe; ++k) {
        for (std::size_t i = 0; i < d; ++i) {
            x[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * stream.uniform();
            y[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * stream.uniform();
        }
        try {
            fields.eval_drift(x, 0.0, mx);
            fields.eval_drift(y, 0.0, my);
            fields.eval_diffusion(x, 0.0, sx);
            fields.eval_diffusion(y, 0.0, sy);
        } catch (const EvalError& e) {
            if (eval_failures++ < 10) {
                report.warnings.push_back(std::string("evaluation failed inside box: ") + e.what());
            }
            continue;
        }
        const double sep = diff_norm(x, y);
        if (sep > 0.0) {
            report.lip_mu = std::max(report.lip_mu, diff_norm(mx, my) / sep);
            report.lip_sigma = std::max(report.lip_sigma, diff_norm(sx, sy) / sep);
        }
        report.growth_mu = std::max({report.growth_mu, norm(mx) / (1.0 + norm(x)),
                                     norm(my) / (1.0 + norm(y))});
        report.growth_sigma = std::max({report.growth_sigma, norm(sx) / (1.0 + norm(x)),
                                        norm(sy) / (1.0 + norm(y))});
    }
    auto check = [&](double value, const char* name) {
        if (value > cap) {
            report.warnings.push_back(std::string(name) + " estimate " + format_coefficient(value) +
                                      " exceeds cap " + format_coefficient(cap));
        }
    };
    check(report.lip_mu, "Lipschitz constant of mu");
    check(report.lip_sigma, "Lipschitz constant of sigma");
    check(report.growth_mu, "linear-growth constant of mu");
    check(report.growth_sigma, "linear-growth constant of sigma");
    return report;
}

}  // namespace itolab
