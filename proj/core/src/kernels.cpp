#include "itolab/kernels.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "itolab/errors.hpp"
#include "itolab/parallel.hpp"
#include "itolab/path.hpp"
#include "itolab/quadrature.hpp"
#include "itolab/sde.hpp"

namespace itolab {

void HeatKernelParams::validate() const {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
        throw InvalidParameter("heat kernel: kappa must be positive");
    }
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw InvalidParameter("heat kernel: t must be positive");
    }
    if (dimension == 0 || dimension > 2) {
        throw InvalidParameter("heat kernel: dimension must be 1 or 2");
    }
}

namespace {

double squared_distance(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw DimensionError("points have different dimensions");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (y[i] - x[i]) * (y[i] - x[i]);
    return s;
}

double gaussian_density(double variance, double r2, std::size_t d) {
    return std::pow(2.0 * std::numbers::pi * variance, -0.5 * static_cast<double>(d)) *
           std::exp(-r2 / (2.0 * variance));
}

}  // namespace

double bm_transition_density(double t, std::span<const double> x, std::span<const double> y) {
    if (!(t > 0.0)) {
        throw InvalidParameter("bm_transition_density: t must be positive");
    }
    return gaussian_density(t, squared_distance(x, y), x.size());
}

double heat_kernel(const HeatKernelParams& k, std::span<const double> x, std::span<const double> y) {
    k.validate();
    if (x.size() != k.dimension) {
        throw DimensionError("heat_kernel: point dimension does not match kernel dimension");
    }
    return gaussian_density(k.variance(), squared_distance(x, y), x.size());
}

double chapman_kolmogorov_gap(double s, double t, double x, double y) {
    if (!(s > 0.0) || !(t > 0.0)) {
        throw InvalidParameter("chapman_kolmogorov_gap: s and t must be positive");
    }
    auto p = [](double tau, double a, double b) {
        return gaussian_density(tau, (b - a) * (b - a), 1);
    };
    const double half_width = 10.0 * std::sqrt(s + t);
    const std::array<double, 2> features{x, y};
    const double convolution = integrate_adaptive(
        [&](double z) { return p(s, x, z) * p(t, z, y); }, x - half_width, x + half_width, features);
    return std::fabs(p(s + t, x, y) - convolution);
}

double heat_solution(const FieldExpr& f, std::span<const double> x, const HeatKernelParams& k) {
    k.validate();
    if (x.size() != k.dimension) {
        throw DimensionError("heat_solution: point dimension does not match kernel dimension");
    }
    const double var = k.variance();
    const double half_width = 10.0 * std::sqrt(var);
    if (k.dimension == 1) {
        const double center = x[0];
        return integrate_adaptive(
            [&](double y) {
                return f.eval(y, 0.0, 0.0) * gaussian_density(var, (y - center) * (y - center), 1);
            },
            center - half_width, center + half_width, std::span<const double>(&x[0], 1));
    }
    const auto rx = composite_rule(x[0] - half_width, x[0] + half_width);
    const auto ry = composite_rule(x[1] - half_width, x[1] + half_width);
    std::vector<double> gx(rx.nodes.size());
    std::vector<double> gy(ry.nodes.size());
    for (std::size_t i = 0; i < gx.size(); ++i) {
        const double dx = rx.nodes[i] - x[0];
        gx[i] = rx.weights[i] * gaussian_density(var, dx * dx, 1);
    }
    for (std::size_t j = 0; j < gy.size(); ++j) {
        const double dy = ry.nodes[j] - x[1];
        gy[j] = ry.weights[j] * gaussian_density(var, dy * dy, 1);
    }
    double total = 0.0;
    for (std::size_t j = 0; j < gy.size(); ++j) {
        double row = 0.0;
        for (std::size_t i = 0; i < gx.size(); ++i) {
            row += gx[i] * f.eval(rx.nodes[i], ry.nodes[j], 0.0);
        }
        total += gy[j] * row;
    }
    return total;
}

EstimateWithError stochastic_representation(const FieldExpr& f, std::span<const double> x, double t,
                                            double kappa, std::size_t n_paths, std::uint64_t seed,
                                            std::size_t n_steps, unsigned workers) {
    if (n_paths < 100) {
        throw InvalidParameter("stochastic_representation: n_paths must be >= 100");
    }
    if (!(kappa > 0.0) || !(t > 0.0)) {
        throw InvalidParameter("stochastic_representation: kappa and t must be positive");
    }
    if (x.empty() || x.size() > 2) {
        throw DimensionError("stochastic_representation: dimension must be 1 or 2");
    }
    const double scale = std::sqrt(2.0 * kappa);
    const std::vector<double> origin(x.size(), 0.0);
    std::vector<double> values(n_paths);
    parallel_for(n_paths, workers, [&](std::size_t p) {
        RngStream stream(seed, p);
        const Path w = brownian_path(stream, origin, t, n_steps);
        const auto wt = w.terminal();
        double point[2] = {0.0, 0.0};
        for (std::size_t k = 0; k < x.size(); ++k) point[k] = x[k] + scale * wt[k];
        values[p] = f.eval(point[0], point[1], 0.0);
    });
    return estimate_of(values);
}

double apply_generator(const FieldSpec& fields, const FieldExpr& f, std::span<const double> x,
                       double t) {
    fields.validate();
    const std::size_t d = fields.dim();
    if (x.size() != d) {
        throw DimensionError("apply_generator: point dimension does not match the fields");
    }
    std::vector<double> b(d);
    std::vector<double> a(d * d);
    fields.eval_drift(x, t, b);
    fields.eval_diffusion_tensor(x, t, a);
    const auto grad = grad_fd(f, x, t);
    const auto hess = hessian_fd(f, x, t);
    double value = 0.0;
    for (std::size_t i = 0; i < d; ++i) value += b[i] * grad[i];
    double second = 0.0;
    for (std::size_t k = 0; k < d * d; ++k) second += a[k] * hess[k];
    return value + 0.5 * second;
}

GeneratorGap generator_limit_gap(const FieldSpec& fields, const FieldExpr& f,
                                 std::span<const double> x, double h, std::size_t n_paths,
                                 std::uint64_t seed, std::size_t n_substeps, unsigned workers) {
    if (!(h > 0.0)) {
        throw InvalidParameter("generator_limit_gap: h must be positive");
    }
    if (n_paths < 2 || n_substeps == 0) {
        throw InvalidParameter("generator_limit_gap: need n_paths >= 2 and n_substeps >= 1");
    }
    SdeProblem problem{fields, std::vector<double>(x.begin(), x.end()), h, n_substeps};
    problem.validate();
    const std::size_t d = fields.dim();
    const std::size_t m = fields.noise_dim();
    const double f0 = f.eval_state(x, 0.0);

    std::vector<double> samples(n_paths);
    parallel_for(n_paths, workers, [&](std::size_t p) {
        RngStream stream(seed, p);
        const DrivenPath driven = euler_maruyama_driven(problem, stream);
        std::vector<double> sigma(d * m);
        double martingale = 0.0;
        for (std::size_t i = 0; i < n_substeps; ++i) {
            const auto xi = driven.x.state(i);
            const double ti = driven.x.times()[i];
            const auto grad = grad_fd(f, xi, ti);
            fields.eval_diffusion(xi, ti, sigma);
            for (std::size_t r = 0; r < d; ++r) {
                double s = 0.0;
                for (std::size_t c = 0; c < m; ++c) s += sigma[r * m + c] * driven.w.increment(i, c);
                martingale += grad[r] * s;
            }
        }
        const double fh = f.eval_state(driven.x.terminal(), h);
        samples[p] = (fh - f0 - martingale) / h;
    });
    const auto est = estimate_of(samples);
    GeneratorGap out;
    out.rate = est.mean;
    out.std_error = est.std_error;
    out.generator = apply_generator(fields, f, x, 0.0);
    out.gap = std::fabs(out.rate - out.generator);
    return out;
}

}  // namespace itolab
