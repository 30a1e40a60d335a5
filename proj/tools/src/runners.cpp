#include "runners.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>

#include "config.hpp"
#include "itolab/density.hpp"
#include "itolab/errors.hpp"
#include "itolab/feynman_kac.hpp"
#include "itolab/ito.hpp"
#include "itolab/parallel.hpp"
#include "itolab/path.hpp"
#include "itolab/pde.hpp"
#include "itolab/sde.hpp"
#include "itolab/stats.hpp"
#include "output.hpp"

#ifndef ITOLAB_VERSION
#define ITOLAB_VERSION "0.0.0"
#endif

namespace itolab::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::uint64_t kDefaultSeed = 1;
// Stream ids of the strong-convergence paths start here, clear of the display paths.
constexpr std::uint64_t kConvergenceStreams = std::uint64_t{1} << 32;

struct Context {
    std::uint64_t seed = 0;
    fs::path out;
    unsigned workers = 0;
    RunResult result;

    fs::path file(const std::string& name) {
        result.files.push_back(name);
        return out / name;
    }
};

using Runner = std::function<void(Context&)>;
using Parser = std::function<Runner(ConfigReader&)>;

std::size_t to_size(std::int64_t v) { return static_cast<std::size_t>(v); }

GridSpec read_box(ConfigReader& r, std::size_t dim, const std::vector<double>& lo,
                  const std::vector<double>& hi, const std::vector<std::int64_t>& bins,
                  const std::string& prefix = "box") {
    GridSpec g;
    g.lo = r.reals(prefix + "_lo", lo);
    g.hi = r.reals(prefix + "_hi", hi);
    for (auto b : r.integers("bins", bins, 1)) g.cells.push_back(to_size(b));
    if (g.lo.size() != dim || g.hi.size() != dim || g.cells.size() != dim) {
        throw ConfigError("config." + prefix + "_lo/" + prefix + "_hi/bins: need " +
                          std::to_string(dim) + " entries each");
    }
    for (std::size_t k = 0; k < dim; ++k) {
        if (!(g.hi[k] > g.lo[k])) {
            throw ConfigError("config." + prefix + "_hi: must exceed " + prefix + "_lo on every axis");
        }
    }
    return g;
}

FieldSpec read_fields(ConfigReader& r, const std::vector<std::string>& drift,
                      const std::vector<std::vector<std::string>>& diffusion) {
    const auto b = r.strings("drift", drift);
    const auto s = r.string_rows("diffusion", diffusion);
    try {
        return make_field_spec(b, s);
    } catch (const Error& e) {
        throw ConfigError(std::string("config.drift/diffusion: ") + e.what());
    }
}

FieldExpr read_expr(ConfigReader& r, const std::string& key, const std::string& fallback) {
    const std::string text = r.string(key, fallback);
    try {
        return parse(text);
    } catch (const Error& e) {
        throw ConfigError("config." + key + ": " + e.what());
    }
}

// Unit-mass Gaussian of per-axis width s sampled at cell centers.
ScalarGrid gaussian_grid(const GridSpec& spec, std::span<const double> center, double s) {
    ScalarGrid g(spec);
    const std::size_t ny = spec.dim() == 2 ? spec.cells[1] : 1;
    for (std::size_t j = 0; j < ny; ++j) {
        const double dy = spec.dim() == 2 ? spec.center(1, j) - center[1] : 0.0;
        for (std::size_t i = 0; i < spec.cells[0]; ++i) {
            const double dx = spec.center(0, i) - center[0];
            g.at(i, j) = std::exp(-(dx * dx + dy * dy) / (2.0 * s * s));
        }
    }
    g.normalize();
    return g;
}

double min_spacing(const GridSpec& g) {
    double h = g.spacing(0);
    for (std::size_t k = 1; k < g.dim(); ++k) h = std::min(h, g.spacing(k));
    return h;
}

json distances(const ScalarGrid& empirical, const ScalarGrid& pde) {
    return {{"l1", l1_distance(empirical, pde)},
            {"l2", l2_distance(empirical, pde)},
            {"sup", sup_distance(empirical, pde)}};
}

// ---------------------------------------------------------------------------

Runner parse_bm_paths(ConfigReader& r, bool two_d) {
    const auto n_paths = to_size(r.integer("n_paths", 5, 1));
    const double T = r.real("T", 1.0, true);
    const auto n_steps = to_size(r.integer("n_steps", 1000, 1));
    const auto d = to_size(r.integer("d", two_d ? 2 : 1, 1, 2));
    if (two_d && d != 2) {
        throw ConfigError("config.d: bm2d-paths requires d = 2");
    }
    return [=](Context& ctx) {
        std::vector<Path> paths(n_paths);
        const std::vector<double> origin(d, 0.0);
        parallel_for(n_paths, ctx.workers, [&](std::size_t p) {
            RngStream stream(ctx.seed, p);
            paths[p] = brownian_path(stream, origin, T, n_steps);
        });
        CsvWriter csv = d == 2 ? CsvWriter(ctx.file("paths.csv"), {"path_id", "step", "t", "x", "y"})
                               : CsvWriter(ctx.file("paths.csv"), {"path_id", "step", "t", "x"});
        for (std::size_t p = 0; p < n_paths; ++p) {
            for (std::size_t i = 0; i <= n_steps; ++i) {
                csv.integer(p).integer(i).number(paths[p].times()[i]);
                for (std::size_t k = 0; k < d; ++k) csv.number(paths[p].at(i, k));
                csv.end_row();
            }
        }
        csv.close();
        ctx.result.metrics["rows"] = n_paths * (n_steps + 1);
        if (d == 2) {
            std::vector<double> dx, dy;
            for (const auto& path : paths) {
                for (std::size_t i = 0; i < n_steps; ++i) {
                    dx.push_back(path.increment(i, 0));
                    dy.push_back(path.increment(i, 1));
                }
            }
            const double corr = sample_correlation(dx, dy);
            const double bound = 4.0 / std::sqrt(static_cast<double>(dx.size()));
            ctx.result.metrics["increment_correlation"] = corr;
            ctx.result.metrics["correlation_bound"] = bound;
            ctx.result.pass = std::fabs(corr) <= bound;
        }
    };
}

// ---------------------------------------------------------------------------

Runner parse_bm_vs_heat(ConfigReader& r) {
    const auto n_paths = to_size(r.integer("n_paths", 40000, 2));
    const double T = r.real("T", 1.0, true);
    const auto n_steps = to_size(r.integer("n_steps", 100, 1));
    const double kappa = r.real("kappa", 0.5, true);
    const GridSpec grid = read_box(r, 2, {-4.0, -4.0}, {4.0, 4.0}, {50, 50});
    const auto n_t = to_size(r.integer("n_t", 100, 1));
    const double slack = r.real("threshold_slack", 0.02);
    const double s = 2.0 * min_spacing(grid);
    const double pde_T = T - s * s / (2.0 * kappa);
    if (!(pde_T > 0.0)) {
        throw ConfigError("config.T: too short for the initial Gaussian width of two cells");
    }
    return [=](Context& ctx) {
        const double scale = std::sqrt(2.0 * kappa);
        const std::vector<double> origin(2, 0.0);
        const Sampler sampler = [&](RngStream& stream, std::span<double> out) {
            const Path w = brownian_path(stream, origin, T, n_steps);
            for (std::size_t k = 0; k < 2; ++k) out[k] = scale * w.terminal()[k];
        };
        const HistogramSpec hs{grid};
        const auto a = histogram_density(draw_samples(sampler, n_paths, 2, ctx.seed, ctx.workers),
                                         hs, ctx.workers);
        const auto b = histogram_density(
            draw_samples(sampler, n_paths, 2, ctx.seed + 1, ctx.workers), hs, ctx.workers);
        const double floor = l1_distance(a.density, b.density);

        const ScalarGrid init = gaussian_grid(grid, origin, s);
        const HeatResult heat = solve_heat(init, kappa, pde_T, grid, n_t, ctx.workers);

        write_grid_csv(ctx.file("density_empirical.csv"), a.density);
        write_grid_csv(ctx.file("density_pde.csv"), heat.grid);

        json m = distances(a.density, heat.grid);
        const double threshold = 2.0 * floor + slack;
        m["noise_floor"] = floor;
        m["threshold"] = threshold;
        m["empirical_mass"] = a.density.mass();
        m["dropped_fraction"] = a.dropped_fraction;
        m["pde_mass"] = heat.grid.mass();
        m["pde_initial_width"] = s;
        m["pde_horizon"] = pde_T;
        m["pde_substep_exponent"] = heat.info.substep_exponent;
        m["pass"] = m["l1"].get<double>() <= threshold;
        ctx.result.pass = m["pass"].get<bool>();
        write_json(ctx.file("metrics.json"), m);
        ctx.result.metrics = m;
    };
}

// ---------------------------------------------------------------------------

Runner parse_gbm(ConfigReader& r) {
    const auto n_paths = to_size(r.integer("n_paths", 5, 1));
    const double T = r.real("T", 1.0, true);
    const auto n_steps = to_size(r.integer("n_steps", 1000, 1));
    const double mu = r.real("mu", 0.5);
    const double sigma = r.real("sigma", 0.2);
    const double s0 = r.real("s0", 1.0, true);
    const auto conv_paths = to_size(r.integer("conv_paths", 200, 2));
    const auto exps = r.integers("dt_exponents", {4, 5, 6, 7, 8, 9}, 0);
    const double slope_min = r.real("slope_min", 0.35);
    const double slope_max = r.real("slope_max", 0.65);
    if (sigma < 0.0) {
        throw ConfigError("config.sigma: must be >= 0");
    }
    if (exps.size() < 2) {
        throw ConfigError("config.dt_exponents: need at least two levels");
    }
    if (*std::max_element(exps.begin(), exps.end()) > 20) {
        throw ConfigError("config.dt_exponents: entries must be <= 20");
    }
    return [=](Context& ctx) {
        const FieldSpec fields = gbm_fields(mu, sigma);
        const SdeProblem problem{fields, {s0}, T, n_steps};
        std::vector<DrivenPath> paths(n_paths);
        parallel_for(n_paths, ctx.workers, [&](std::size_t p) {
            RngStream stream(ctx.seed, p);
            paths[p] = euler_maruyama_driven(problem, stream);
        });
        double min_s = INFINITY;
        CsvWriter csv(ctx.file("paths.csv"), {"path_id", "step", "t", "s_em", "s_exact"});
        for (std::size_t p = 0; p < n_paths; ++p) {
            for (std::size_t i = 0; i <= n_steps; ++i) {
                const double t = paths[p].x.times()[i];
                const double em = paths[p].x.at(i);
                min_s = std::min(min_s, em);
                csv.integer(p).integer(i).number(t).number(em);
                csv.number(gbm_exact(s0, mu, sigma, t, paths[p].w.at(i))).end_row();
            }
        }
        csv.close();

        // Coupled paths: every level sums the increments of the finest one.
        const auto finest = static_cast<std::size_t>(*std::max_element(exps.begin(), exps.end()));
        const std::size_t n_fine = std::size_t{1} << finest;
        const double sqrt_dt = std::sqrt(T / static_cast<double>(n_fine));
        std::vector<std::vector<double>> errors(exps.size(), std::vector<double>(conv_paths));
        parallel_for(conv_paths, ctx.workers, [&](std::size_t p) {
            RngStream stream(ctx.seed, kConvergenceStreams + p);
            std::vector<double> dw(n_fine);
            double w_T = 0.0;
            for (double& v : dw) {
                v = sqrt_dt * stream.standard_normal();
                w_T += v;
            }
            const double exact = gbm_exact(s0, mu, sigma, T, w_T);
            for (std::size_t l = 0; l < exps.size(); ++l) {
                const std::size_t n = std::size_t{1} << exps[l];
                const std::size_t block = n_fine / n;
                std::vector<double> coarse(n, 0.0);
                for (std::size_t i = 0; i < n_fine; ++i) coarse[i / block] += dw[i];
                const Path x = euler_maruyama_increments({fields, {s0}, T, n}, coarse);
                errors[l][p] = std::fabs(x.terminal()[0] - exact);
            }
        });
        std::vector<double> log_dt, log_err;
        CsvWriter conv(ctx.file("strong_error.csv"),
                       {"dt_exponent", "dt", "mean_abs_error", "std_error"});
        for (std::size_t l = 0; l < exps.size(); ++l) {
            const double dt = T / static_cast<double>(std::size_t{1} << exps[l]);
            const auto est = estimate_of(errors[l]);
            conv.integer(to_size(exps[l])).number(dt).number(est.mean).number(est.std_error);
            conv.end_row();
            log_dt.push_back(std::log(dt));
            log_err.push_back(std::log(est.mean));
        }
        conv.close();
        const double slope = regression_slope(log_dt, log_err);
        json& m = ctx.result.metrics;
        m["strong_slope"] = slope;
        m["slope_range"] = {slope_min, slope_max};
        m["slope_pass"] = slope >= slope_min && slope <= slope_max;
        m["min_s_em"] = min_s;
        m["all_positive"] = min_s > 0.0;
        ctx.result.pass = m["slope_pass"].get<bool>() && m["all_positive"].get<bool>();
        m["pass"] = ctx.result.pass;
    };
}

// ---------------------------------------------------------------------------

Runner parse_fp_compare(ConfigReader& r) {
    const auto n_paths = to_size(r.integer("n_paths", 40000, 2));
    const double T = r.real("T", 3.0, true);
    const auto n_steps = to_size(r.integer("n_steps", 500, 1));
    const FieldSpec fields = read_fields(
        r, {"-0.3*x + 1.5*sin(y)", "-0.3*y - 1.5*cos(x)"},
        {{"0.3 + 0.2*abs(sin(x))", "0"}, {"0", "0.3 + 0.2*abs(cos(y))"}});
    const auto x0 = r.reals("x0", {0.0, 0.0});
    const GridSpec grid = read_box(r, 2, {-5.0, -5.0}, {5.0, 5.0}, {50, 50});
    const auto refine = to_size(r.integer("refine", 4, 1, 32));
    const auto n_t = to_size(r.integer("n_t", 500, 1));
    const double slack = r.real("threshold_slack", 0.05);
    const double mass_tol = r.real("mass_tolerance", 1e-9, true);
    if (fields.dim() != 2) {
        throw ConfigError("config.drift: fp-compare needs two drift components");
    }
    if (x0.size() != 2) {
        throw ConfigError("config.x0: need 2 entries");
    }
    return [=](Context& ctx) {
        const HistogramSpec hs{grid};
        auto ensemble = [&](std::uint64_t seed) {
            Ensemble e{SdeProblem{fields, x0, T, n_steps}, n_paths, seed, {}, ctx.workers};
            return histogram_density(simulate_ensemble(e).terminals, hs, ctx.workers);
        };
        const auto a = ensemble(ctx.seed);
        const auto b = ensemble(ctx.seed + 1);
        const double floor = l1_distance(a.density, b.density);

        const GridSpec fine = refined(grid, refine);
        const double s = 2.0 * min_spacing(fine);
        const FpResult fp =
            solve_fokker_planck({fields, gaussian_grid(fine, x0, s), T, n_t, fine}, ctx.workers);
        const ScalarGrid pde = coarsen(fp.grid, refine);

        write_grid_csv(ctx.file("density_empirical.csv"), a.density);
        write_grid_csv(ctx.file("density_pde.csv"), pde);

        json m = distances(a.density, pde);
        const double threshold = 2.0 * floor + slack;
        const bool l1_pass = m["l1"].get<double>() <= threshold;
        const bool mass_pass =
            fp.relative_mass_drift <= mass_tol && std::fabs(pde.mass() - 1.0) <= mass_tol;
        m["noise_floor"] = floor;
        m["threshold"] = threshold;
        m["l1_pass"] = l1_pass;
        m["empirical_mass"] = a.density.mass();
        m["dropped_fraction"] = a.dropped_fraction;
        m["pde_mass"] = pde.mass();
        m["pde_relative_mass_drift"] = fp.relative_mass_drift;
        m["pde_min_before_clip"] = fp.min_before_clip;
        m["pde_clipped_mass"] = fp.clipped_mass;
        m["pde_initial_width"] = s;
        m["pde_substep_exponent"] = fp.info.substep_exponent;
        m["pde_steps"] = fp.info.steps_taken;
        m["mass_pass"] = mass_pass;
        m["pass"] = l1_pass && mass_pass;
        ctx.result.pass = l1_pass && mass_pass;
        write_json(ctx.file("metrics.json"), m);
        ctx.result.metrics = m;
    };
}

// ---------------------------------------------------------------------------

// Linear interpolation between cell centers, clamped at the ends.
double interpolate(const ScalarGrid& g, double x) {
    const GridSpec& s = g.spec;
    const double u = (x - s.lo[0]) / s.spacing(0) - 0.5;
    if (u <= 0.0) return g.values.front();
    const auto i = static_cast<std::size_t>(std::floor(u));
    if (i + 1 >= s.cells[0]) return g.values.back();
    const double w = u - static_cast<double>(i);
    return (1.0 - w) * g.values[i] + w * g.values[i + 1];
}

Runner parse_fk_check(ConfigReader& r) {
    const FieldSpec fields = read_fields(r, {"-x"}, {{"1"}});
    const FieldExpr potential = read_expr(r, "potential", "0.5*x^2");
    const FieldExpr payoff = read_expr(r, "payoff", "exp(-x^2)");
    const double T = r.real("T", 1.0, true);
    const auto probes = r.reals("probes", {-1.0, -0.5, 0.0, 0.5, 1.0});
    const auto n_paths = to_size(r.integer("n_paths", 20000, 2));
    const auto n_steps = to_size(r.integer("n_steps", 200, 1));
    GridSpec grid;
    grid.lo = {r.real("grid_lo", -6.0)};
    grid.hi = {r.real("grid_hi", 6.0)};
    grid.cells = {to_size(r.integer("cells", 480, 3))};
    const auto n_t = to_size(r.integer("n_t", 200, 1));
    const double bias = r.real("bias_allowance", 0.01);
    const double c = r.real("constant_potential", 0.7);
    if (fields.dim() != 1) {
        throw ConfigError("config.drift: fk-check needs one-dimensional fields");
    }
    if (!(grid.hi[0] > grid.lo[0])) {
        throw ConfigError("config.grid_hi: must exceed grid_lo");
    }
    if (probes.empty()) {
        throw ConfigError("config.probes: need at least one probe point");
    }
    return [=](Context& ctx) {
        const BackwardResult pde =
            solve_backward_fk(fields, potential, payoff, T, grid, n_t, ctx.workers);
        json report;
        report["probes"] = json::array();
        bool pass = true;
        for (double x : probes) {
            FkQuery q{fields, potential, payoff, 0.0, T, {x}, n_paths, n_steps, ctx.seed, ctx.workers};
            const auto est = fk_estimate(q);
            const double u = interpolate(pde.grid, x);
            const double tol = kSigmaTolerance * est.std_error + bias;
            const bool ok = std::fabs(est.mean - u) <= tol;
            pass = pass && ok;
            report["probes"].push_back({{"x", x},
                                        {"mc_mean", est.mean},
                                        {"std_error", est.std_error},
                                        {"n_paths", est.n},
                                        {"pde", u},
                                        {"tolerance", tol},
                                        {"pass", ok}});
        }

        const FieldExpr flat = FieldExpr::constant(c);
        const FieldExpr one = FieldExpr::constant(1.0);
        const double exact = std::exp(-c * T);
        FkQuery q{fields, flat, one, 0.0, T, {probes.front()}, n_paths, n_steps, ctx.seed, ctx.workers};
        const auto mc = fk_estimate(q);
        const BackwardResult flat_pde = solve_backward_fk(fields, flat, one, T, grid, n_t, ctx.workers);
        const double pde_value = interpolate(flat_pde.grid, probes.front());
        const bool mc_ok = std::fabs(mc.mean - exact) <= 1e-12 * exact && mc.std_error == 0.0;
        const bool pde_ok = std::fabs(pde_value - exact) <= 1e-8 * exact;
        report["constant_potential"] = {{"c", c},         {"exact", exact},   {"mc_mean", mc.mean},
                                        {"mc_std_error", mc.std_error},       {"pde", pde_value},
                                        {"mc_pass", mc_ok}, {"pde_pass", pde_ok}};
        report["pde_substep_exponent"] = pde.info.substep_exponent;
        pass = pass && mc_ok && pde_ok;
        report["pass"] = pass;
        ctx.result.pass = pass;
        write_json(ctx.file("fk_report.json"), report);
        ctx.result.metrics = report;
    };
}

// ---------------------------------------------------------------------------

Runner parse_ito_props(ConfigReader& r) {
    StatCheckConfig cfg;
    cfg.n_paths = to_size(r.integer("n_paths", 200000, 2));
    cfg.n_steps = to_size(r.integer("n_steps", 1000, 1));
    cfg.T = r.real("T", 1.0, true);
    const auto checkpoints = r.reals("checkpoints", {0.25, 0.5, 0.75, 1.0});
    return [=](Context& ctx) mutable {
        cfg.seed = ctx.seed;
        cfg.workers = ctx.workers;
        json report;
        const auto iso = check_isometry([](double t) { return t; }, cfg);
        report["isometry"] = {{"integrand", "t"},        {"mc_lhs", iso.mc_lhs},
                              {"analytic_rhs", iso.analytic_rhs}, {"std_error", iso.std_error},
                              {"n_paths", iso.n_paths},  {"pass", iso.pass}};

        const auto zero = check_isometry([](double) { return 0.0; }, cfg);
        const bool zero_ok = zero.mc_lhs == 0.0 && zero.analytic_rhs == 0.0 && zero.std_error == 0.0;
        report["zero_integrand"] = {{"mc_lhs", zero.mc_lhs},
                                    {"analytic_rhs", zero.analytic_rhs},
                                    {"std_error", zero.std_error},
                                    {"pass", zero_ok}};

        MartingaleReport mart;
        try {
            mart = check_martingale_zero_mean([](double, double w) { return w; }, cfg, checkpoints);
        } catch (const InvalidParameter& e) {
            throw ConfigError(std::string("config.checkpoints: ") + e.what());
        }
        json cps = json::array();
        for (const auto& c : mart.checkpoints) {
            cps.push_back({{"t", c.t}, {"mean", c.mean}, {"std_error", c.std_error}, {"pass", c.pass}});
        }
        json incs = json::array();
        for (const auto& c : mart.increments) {
            incs.push_back({{"s", c.s},
                            {"t", c.t},
                            {"correlation", c.correlation},
                            {"bound", c.bound},
                            {"pass", c.pass}});
        }
        report["martingale"] = {
            {"integrand", "W"}, {"checkpoints", cps}, {"increments", incs}, {"pass", mart.pass}};

        const auto qv = check_quadratic_variation([](double t) { return t; }, cfg);
        report["quadratic_variation"] = {{"integrand", "t"},
                                         {"mc_mean", qv.mc_mean},
                                         {"analytic", qv.analytic},
                                         {"std_error", qv.std_error},
                                         {"max_identity_residual", qv.max_identity_residual},
                                         {"pass", qv.pass}};

        const auto ids = check_exact_identities(cfg);
        report["identities"] = {{"max_linearity_residual", ids.max_linearity_residual},
                                {"max_wdw_residual", ids.max_wdw_residual},
                                {"pass", ids.pass}};

        const bool pass = iso.pass && zero_ok && mart.pass && qv.pass && ids.pass;
        report["pass"] = pass;
        ctx.result.pass = pass;
        write_json(ctx.file("ito_report.json"), report);
        ctx.result.metrics = report;
    };
}

const std::map<std::string, Parser>& parsers() {
    static const std::map<std::string, Parser> table{
        {"bm-paths", [](ConfigReader& r) { return parse_bm_paths(r, false); }},
        {"bm2d-paths", [](ConfigReader& r) { return parse_bm_paths(r, true); }},
        {"bm-vs-heat", parse_bm_vs_heat},
        {"gbm", parse_gbm},
        {"fp-compare", parse_fp_compare},
        {"fk-check", parse_fk_check},
        {"ito-props", parse_ito_props},
    };
    return table;
}

struct Prepared {
    ConfigReader reader;
    Runner runner;
    std::uint64_t seed;
    std::string out;
};

Prepared prepare(const std::string& name, const json& config, const RunOptions& options) {
    const auto it = parsers().find(name);
    if (it == parsers().end()) {
        throw ConfigError("unknown experiment '" + name + "'");
    }
    ConfigReader r(config);
    const std::string declared = r.string("experiment", name);
    if (declared != name) {
        throw ConfigError("config.experiment: '" + declared + "' does not match subcommand '" +
                          name + "'");
    }
    std::uint64_t seed = r.seed("seed", kDefaultSeed);
    std::string out = r.string("output_dir", "out/" + name);
    Runner runner = it->second(r);
    r.finish();
    if (options.seed) {
        seed = *options.seed;
        r.set("seed", seed);
    }
    if (options.out_dir) {
        out = *options.out_dir;
        r.set("output_dir", out);
    }
    return {std::move(r), std::move(runner), seed, out};
}

}  // namespace

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names{"bm-paths", "bm2d-paths", "bm-vs-heat", "gbm",
                                                "fp-compare", "fk-check", "ito-props"};
    return names;
}

json default_config(const std::string& name) {
    return prepare(name, json::object(), {}).reader.resolved();
}

RunResult run_experiment(const std::string& name, const json& config, const RunOptions& options) {
    Prepared prep = prepare(name, config, options);
    Context ctx;
    ctx.seed = prep.seed;
    ctx.out = prep.out;
    ctx.workers = options.workers;
    ensure_directory(ctx.out);

    const auto start = std::chrono::steady_clock::now();
    prep.runner(ctx);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    json meta;
    meta["experiment"] = name;
    meta["version"] = ITOLAB_VERSION;
    meta["seed"] = prep.seed;
    meta["config"] = prep.reader.resolved();
    meta["wall_time_seconds"] = elapsed.count();
    meta["outputs"] = ctx.result.files;
    meta["metrics"] = ctx.result.metrics;
    meta["pass"] = ctx.result.pass;
    ctx.result.files.push_back("meta.json");
    write_json(ctx.out / "meta.json", meta);
    ctx.result.out_dir = prep.out;
    return ctx.result;
}

}  // namespace itolab::cli
