#include "itolab/ito.hpp"

#include <algorithm>
#include <cmath>

#include "itolab/errors.hpp"
#include "itolab/parallel.hpp"
#include "itolab/stats.hpp"

namespace itolab {

Integrand Integrand::scalar(std::vector<double> values) {
    Integrand f;
    f.nodes = values.size();
    f.values = std::move(values);
    return f;
}

Integrand Integrand::matrix(std::size_t nodes, std::size_t rows, std::size_t cols,
                            std::vector<double> values) {
    if (values.size() != nodes * rows * cols) {
        throw DimensionError("integrand: value count does not match nodes * rows * cols");
    }
    Integrand f;
    f.nodes = nodes;
    f.rows = rows;
    f.cols = cols;
    f.values = std::move(values);
    return f;
}

std::vector<double> ito_integral(const Integrand& f, const Path& w) {
    if (f.nodes != w.n_nodes()) {
        throw DimensionError("ito_integral: integrand has " + std::to_string(f.nodes) +
                             " nodes, path has " + std::to_string(w.n_nodes()));
    }
    if (f.cols != w.dim()) {
        throw DimensionError("ito_integral: integrand columns do not match path dimension");
    }
    if (f.values.size() != f.nodes * f.rows * f.cols) {
        throw DimensionError("ito_integral: malformed integrand");
    }
    std::vector<double> result(f.rows, 0.0);
    for (std::size_t i = 0; i + 1 < w.n_nodes(); ++i) {
        for (std::size_t r = 0; r < f.rows; ++r) {
            double acc = 0.0;
            for (std::size_t c = 0; c < f.cols; ++c) {
                acc += f.at(i, r, c) * w.increment(i, c);
            }
            result[r] += acc;
        }
    }
    return result;
}

double ito_integral(std::span<const double> f, const Path& w) {
    if (w.dim() != 1) {
        throw DimensionError("ito_integral: scalar integrand needs a 1D path");
    }
    if (f.size() != w.n_nodes()) {
        throw DimensionError("ito_integral: integrand length does not match path grid");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < w.n_nodes(); ++i) {
        sum += f[i] * w.increment(i);
    }
    return sum;
}

namespace {

void require_aligned_1d(const Path& x, const Path& y, const char* who) {
    if (x.dim() != 1 || y.dim() != 1) {
        throw DimensionError(std::string(who) + ": paths must be one-dimensional");
    }
    if (!x.same_grid(y)) {
        throw DimensionError(std::string(who) + ": paths are on different grids");
    }
}

}  // namespace

double quadratic_covariation(const Path& x, const Path& y) {
    require_aligned_1d(x, y, "quadratic_covariation");
    double sum = 0.0;
    for (std::size_t i = 0; i < x.n_steps(); ++i) {
        sum += x.increment(i) * y.increment(i);
    }
    return sum;
}

double integration_by_parts_residual(const Path& x, const Path& y) {
    require_aligned_1d(x, y, "integration_by_parts_residual");
    const std::size_t n = x.n_steps();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x.increment(i);
        const double dy = y.increment(i);
        sum += x.at(i) * dy + y.at(i) * dx + dx * dy;
    }
    const double expected = x.at(n) * y.at(n) - x.at(0) * y.at(0);
    return scaled_residual(std::fabs(expected - sum), expected);
}

double ito_formula_residual(const Path& x, const Path& w, const FieldSpec& fields,
                            const TestFunction& tf, QuadraticTerm mode) {
    const std::size_t d = fields.dim();
    const std::size_t m = fields.noise_dim();
    if (tf.gradient.size() != d || tf.hessian.size() != d * d) {
        throw InvalidParameter("ito_formula_residual: test function needs " + std::to_string(d) +
                               " gradient and " + std::to_string(d * d) + " Hessian expressions");
    }
    if (x.dim() != d || w.dim() != m) {
        throw DimensionError("ito_formula_residual: path dimensions do not match the fields");
    }
    if (!x.same_grid(w)) {
        throw DimensionError("ito_formula_residual: x and w are on different grids");
    }

    const double dt = x.dt();
    std::vector<double> mu(d);
    std::vector<double> sigma(d * m);
    std::vector<double> grad(d);
    std::vector<double> hess(d * d);
    std::vector<double> a(d * d);
    std::vector<double> dw(m);
    std::vector<double> sdw(d);

    double drift_sum = 0.0;
    double noise_sum = 0.0;
    for (std::size_t i = 0; i < x.n_steps(); ++i) {
        const auto xi = x.state(i);
        const double t = x.times()[i];
        fields.eval_drift(xi, t, mu);
        fields.eval_diffusion(xi, t, sigma);
        for (std::size_t k = 0; k < d; ++k) grad[k] = tf.gradient[k].eval_state(xi, t);
        for (std::size_t k = 0; k < d * d; ++k) hess[k] = tf.hessian[k].eval_state(xi, t);
        for (std::size_t k = 0; k < m; ++k) dw[k] = w.increment(i, k);

        double first = tf.time_derivative ? tf.time_derivative->eval_state(xi, t) : 0.0;
        for (std::size_t k = 0; k < d; ++k) first += grad[k] * mu[k];

        for (std::size_t r = 0; r < d; ++r) {
            double s = 0.0;
            for (std::size_t c = 0; c < m; ++c) s += sigma[r * m + c] * dw[c];
            sdw[r] = s;
        }

        double second = 0.0;
        if (mode == QuadraticTerm::Expected) {
            fields.eval_diffusion_tensor(xi, t, a);
            for (std::size_t k = 0; k < d * d; ++k) second += a[k] * hess[k];
            drift_sum += (first + 0.5 * second) * dt;
        } else {
            for (std::size_t r = 0; r < d; ++r) {
                for (std::size_t c = 0; c < d; ++c) second += hess[r * d + c] * sdw[r] * sdw[c];
            }
            drift_sum += first * dt + 0.5 * second;
        }
        for (std::size_t k = 0; k < d; ++k) noise_sum += grad[k] * sdw[k];
    }

    const std::size_t n = x.n_steps();
    const double expected = tf.f.eval_state(x.state(n), x.times()[n]) - tf.f.eval_state(x.state(0), 0.0);
    return scaled_residual(std::fabs(expected - drift_sum - noise_sum), expected);
}

// ---------------------------------------------------------------------------

namespace {

void validate(const StatCheckConfig& cfg) {
    if (cfg.n_paths < 2) {
        throw InvalidParameter("statistical check needs n_paths >= 2");
    }
    if (!(cfg.T > 0.0) || cfg.n_steps == 0) {
        throw InvalidParameter("statistical check needs T > 0 and n_steps >= 1");
    }
}

Path unit_path(const StatCheckConfig& cfg, std::size_t path_id) {
    RngStream stream(cfg.seed, path_id);
    const double origin = 0.0;
    return brownian_path(stream, std::span<const double>(&origin, 1), cfg.T, cfg.n_steps);
}

std::vector<double> sample_deterministic(const std::function<double(double)>& f,
                                         const StatCheckConfig& cfg) {
    std::vector<double> v(cfg.n_steps + 1);
    for (std::size_t i = 0; i <= cfg.n_steps; ++i) {
        v[i] = f(cfg.T * static_cast<double>(i) / static_cast<double>(cfg.n_steps));
    }
    return v;
}

double left_sum_of_squares(std::span<const double> f, double dt) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) s += f[i] * f[i] * dt;
    return s;
}

std::size_t checkpoint_index(double t, const StatCheckConfig& cfg) {
    const double dt = cfg.T / static_cast<double>(cfg.n_steps);
    const double k = std::round(t / dt);
    if (k < 0.0 || k > static_cast<double>(cfg.n_steps) || std::fabs(k * dt - t) > 1e-9 * cfg.T) {
        throw InvalidParameter("checkpoint t = " + std::to_string(t) + " is not a grid node");
    }
    return static_cast<std::size_t>(k);
}

}  // namespace

IsometryReport check_isometry(const std::function<double(double)>& f, const StatCheckConfig& cfg) {
    validate(cfg);
    const auto fv = sample_deterministic(f, cfg);
    std::vector<double> squares(cfg.n_paths);
    parallel_for(cfg.n_paths, cfg.workers, [&](std::size_t p) {
        const Path w = unit_path(cfg, p);
        const double integral = ito_integral(fv, w);
        squares[p] = integral * integral;
    });
    const auto est = estimate_of(squares);
    IsometryReport r;
    r.mc_lhs = est.mean;
    r.std_error = est.std_error;
    r.n_paths = est.n;
    r.analytic_rhs = left_sum_of_squares(fv, cfg.T / static_cast<double>(cfg.n_steps));
    r.pass = std::fabs(r.mc_lhs - r.analytic_rhs) <= kSigmaTolerance * r.std_error;
    return r;
}

MartingaleReport check_martingale_zero_mean(const AdaptedIntegrand& f, const StatCheckConfig& cfg,
                                            std::span<const double> checkpoints) {
    validate(cfg);
    if (checkpoints.empty()) {
        throw InvalidParameter("check_martingale_zero_mean: no checkpoints");
    }
    std::vector<std::size_t> idx;
    for (double t : checkpoints) idx.push_back(checkpoint_index(t, cfg));
    if (!std::is_sorted(idx.begin(), idx.end())) {
        throw InvalidParameter("check_martingale_zero_mean: checkpoints must be increasing");
    }

    const std::size_t k = idx.size();
    std::vector<double> values(cfg.n_paths * k);
    parallel_for(cfg.n_paths, cfg.workers, [&](std::size_t p) {
        const Path w = unit_path(cfg, p);
        double running = 0.0;
        std::size_t next = 0;
        for (std::size_t i = 0; i <= w.n_steps() && next < k; ++i) {
            while (next < k && idx[next] == i) {
                values[p * k + next] = running;
                ++next;
            }
            if (i < w.n_steps()) {
                running += f(w.times()[i], w.at(i)) * w.increment(i);
            }
        }
    });

    MartingaleReport report;
    report.pass = true;
    std::vector<std::vector<double>> columns(k, std::vector<double>(cfg.n_paths));
    for (std::size_t p = 0; p < cfg.n_paths; ++p) {
        for (std::size_t c = 0; c < k; ++c) columns[c][p] = values[p * k + c];
    }
    for (std::size_t c = 0; c < k; ++c) {
        const auto est = estimate_of(columns[c]);
        CheckpointMean cm{checkpoints[c], est.mean, est.std_error, false};
        cm.pass = std::fabs(est.mean) <= kSigmaTolerance * est.std_error;
        report.pass = report.pass && cm.pass;
        report.checkpoints.push_back(cm);
    }
    const double bound = kSigmaTolerance / std::sqrt(static_cast<double>(cfg.n_paths));
    for (std::size_t c = 0; c + 1 < k; ++c) {
        std::vector<double> inc(cfg.n_paths);
        for (std::size_t p = 0; p < cfg.n_paths; ++p) inc[p] = columns[c + 1][p] - columns[c][p];
        IncrementCorrelation ic;
        ic.s = checkpoints[c];
        ic.t = checkpoints[c + 1];
        ic.correlation = sample_correlation(columns[c], inc);
        ic.bound = bound;
        ic.pass = std::fabs(ic.correlation) <= bound;
        report.pass = report.pass && ic.pass;
        report.increments.push_back(ic);
    }
    return report;
}

QuadraticVariationReport check_quadratic_variation(const std::function<double(double)>& f,
                                                   const StatCheckConfig& cfg) {
    validate(cfg);
    const auto fv = sample_deterministic(f, cfg);
    std::vector<double> qv(cfg.n_paths);
    std::vector<double> residual(cfg.n_paths);
    parallel_for(cfg.n_paths, cfg.workers, [&](std::size_t p) {
        const Path w = unit_path(cfg, p);
        std::vector<double> running(w.n_nodes(), 0.0);
        double direct = 0.0;
        for (std::size_t i = 0; i < w.n_steps(); ++i) {
            const double dw = w.increment(i);
            running[i + 1] = running[i] + fv[i] * dw;
            direct += fv[i] * fv[i] * dw * dw;
        }
        const Path m(cfg.T, cfg.n_steps, 1, std::move(running));
        qv[p] = quadratic_covariation(m, m);
        residual[p] = scaled_residual(std::fabs(qv[p] - direct), direct);
    });
    const auto est = estimate_of(qv);
    QuadraticVariationReport r;
    r.mc_mean = est.mean;
    r.std_error = est.std_error;
    r.analytic = left_sum_of_squares(fv, cfg.T / static_cast<double>(cfg.n_steps));
    r.max_identity_residual = *std::max_element(residual.begin(), residual.end());
    r.pass = std::fabs(r.mc_mean - r.analytic) <= kSigmaTolerance * r.std_error &&
             r.max_identity_residual <= 1e-10;
    return r;
}

IdentityReport check_exact_identities(const StatCheckConfig& cfg, double tolerance) {
    validate(cfg);
    constexpr double a = 2.0;
    constexpr double b = -3.0;
    std::vector<double> lin(cfg.n_paths);
    std::vector<double> wdw(cfg.n_paths);
    parallel_for(cfg.n_paths, cfg.workers, [&](std::size_t p) {
        const Path w = unit_path(cfg, p);
        const std::size_t nodes = w.n_nodes();
        std::vector<double> f(nodes);
        std::vector<double> g(nodes);
        std::vector<double> combo(nodes);
        for (std::size_t i = 0; i < nodes; ++i) {
            f[i] = w.times()[i];
            g[i] = w.at(i);
            combo[i] = a * f[i] + b * g[i];
        }
        const double i_f = ito_integral(f, w);
        const double i_g = ito_integral(g, w);
        const double expected_lin = a * i_f + b * i_g;
        lin[p] = scaled_residual(std::fabs(ito_integral(combo, w) - expected_lin), expected_lin);

        double sq = 0.0;
        for (std::size_t i = 0; i < w.n_steps(); ++i) sq += w.increment(i) * w.increment(i);
        const double wt = w.at(nodes - 1);
        const double w0 = w.at(0);
        const double closed = 0.5 * (wt * wt - w0 * w0 - sq);
        wdw[p] = scaled_residual(std::fabs(i_g - closed), closed);
    });
    IdentityReport r;
    r.max_linearity_residual = *std::max_element(lin.begin(), lin.end());
    r.max_wdw_residual = *std::max_element(wdw.begin(), wdw.end());
    r.pass = r.max_linearity_residual <= tolerance && r.max_wdw_residual <= tolerance;
    return r;
}

}  // namespace itolab
