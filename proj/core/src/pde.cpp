#include "itolab/pde.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "itolab/errors.hpp"
#include "itolab/parallel.hpp"

namespace itolab {

namespace {

constexpr std::size_t kMaxSubstepExponent = 24;

ScalarGrid initial_grid(const GridInit& init, const GridSpec& grid) {
    if (const auto* g = std::get_if<ScalarGrid>(&init)) {
        if (!(g->spec == grid)) {
            throw DimensionError("initial grid does not match the solver grid");
        }
        if (g->values.size() != grid.size()) {
            throw DimensionError("initial grid has the wrong number of values");
        }
        return *g;
    }
    return sample_on_grid(std::get<FieldExpr>(init), grid);
}

// Smallest k with bound(T / (n_t 2^k)) satisfied.
template <typename Stable>
PdeRunInfo choose_steps(double T, std::size_t n_t, Stable&& stable) {
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw InvalidParameter("PDE horizon T must be positive");
    }
    if (n_t == 0) {
        throw InvalidParameter("PDE needs n_t >= 1");
    }
    for (std::size_t k = 0; k <= kMaxSubstepExponent; ++k) {
        const std::size_t steps = n_t << k;
        const double dt = T / static_cast<double>(steps);
        if (stable(dt)) {
            return {k, steps, dt};
        }
    }
    throw InvalidParameter("stability bound cannot be met within 2^24 substeps");
}

void check_step(const std::vector<double>& u, std::size_t step, double limit) {
    double total = 0.0;
    for (double v : u) {
        if (!std::isfinite(v)) {
            throw InstabilityError("non-finite value in PDE solution", step);
        }
        total += std::fabs(v);
    }
    if (total > limit) {
        throw InstabilityError("PDE solution blew up", step);
    }
}

double abs_sum(const std::vector<double>& u) {
    double s = 0.0;
    for (double v : u) s += std::fabs(v);
    return s;
}

}  // namespace

ScalarGrid sample_on_grid(const FieldExpr& f, const GridSpec& grid) {
    ScalarGrid out(grid);
    const std::size_t nx = grid.cells[0];
    const std::size_t ny = grid.dim() == 2 ? grid.cells[1] : 1;
    for (std::size_t j = 0; j < ny; ++j) {
        const double y = grid.dim() == 2 ? grid.center(1, j) : 0.0;
        for (std::size_t i = 0; i < nx; ++i) {
            out.at(i, j) = f.eval(grid.center(0, i), y, 0.0);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

HeatResult solve_heat(const GridInit& f0, double kappa, double T, const GridSpec& grid,
                      std::size_t n_t, unsigned workers) {
    grid.validate();
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
        throw InvalidParameter("solve_heat: kappa must be positive");
    }
    ScalarGrid u = initial_grid(f0, grid);
    const std::size_t nx = grid.cells[0];
    const std::size_t ny = grid.dim() == 2 ? grid.cells[1] : 1;
    const double inv_dx2 = 1.0 / (grid.spacing(0) * grid.spacing(0));
    const double inv_dy2 = grid.dim() == 2 ? 1.0 / (grid.spacing(1) * grid.spacing(1)) : 0.0;

    const PdeRunInfo info = choose_steps(T, n_t, [&](double dt) {
        return kappa * dt * (inv_dx2 + inv_dy2) <= 0.5;
    });
    const double cx = kappa * info.dt * inv_dx2;
    const double cy = kappa * info.dt * inv_dy2;
    const double limit = 1e6 * std::max(abs_sum(u.values), 1.0);

    std::vector<double> next(u.values.size());
    for (std::size_t step = 0; step < info.steps_taken; ++step) {
        const std::vector<double>& cur = u.values;
        parallel_for(ny, workers, [&](std::size_t j) {
            const std::size_t row = j * nx;
            const std::size_t south = (j == 0 ? j : j - 1) * nx;
            const std::size_t north = (j + 1 == ny ? j : j + 1) * nx;
            for (std::size_t i = 0; i < nx; ++i) {
                const double c = cur[row + i];
                const double w = cur[row + (i == 0 ? i : i - 1)];
                const double e = cur[row + (i + 1 == nx ? i : i + 1)];
                double lap = cx * (e - 2.0 * c + w);
                if (ny > 1) {
                    lap += cy * (cur[north + i] - 2.0 * c + cur[south + i]);
                }
                next[row + i] = c + lap;
            }
        });
        u.values.swap(next);
        check_step(u.values, step + 1, limit);
    }
    return {std::move(u), info};
}

// ---------------------------------------------------------------------------

namespace {

struct Coefficients {
    std::vector<double> bx, by, axx, axy, ayy;
};

Coefficients fp_coefficients(const FieldSpec& fields, const GridSpec& grid, double t) {
    const std::size_t nx = grid.cells[0];
    const std::size_t ny = grid.dim() == 2 ? grid.cells[1] : 1;
    const std::size_t d = grid.dim();
    Coefficients c;
    c.bx.resize(nx * ny);
    c.axx.resize(nx * ny);
    if (d == 2) {
        c.by.resize(nx * ny);
        c.axy.resize(nx * ny);
        c.ayy.resize(nx * ny);
    }
    double point[2];
    double b[2];
    double a[4];
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            point[0] = grid.center(0, i);
            if (d == 2) point[1] = grid.center(1, j);
            const std::span<const double> x(point, d);
            fields.eval_drift(x, t, std::span<double>(b, d));
            fields.eval_diffusion_tensor(x, t, std::span<double>(a, d * d));
            const std::size_t k = j * nx + i;
            c.bx[k] = b[0];
            c.axx[k] = a[0];
            bool psd = a[0] >= 0.0;
            if (d == 2) {
                c.by[k] = b[1];
                c.axy[k] = 0.5 * (a[1] + a[2]);
                c.ayy[k] = a[3];
                psd = psd && a[3] >= 0.0 && a[0] * a[3] - c.axy[k] * c.axy[k] >= -1e-12;
            }
            if (!psd) {
                throw InvalidParameter("diffusion tensor is not positive semidefinite at cell (" +
                                       std::to_string(i) + ", " + std::to_string(j) + ")");
            }
        }
    }
    return c;
}

bool fp_stable(const Coefficients& c, const GridSpec& grid, double dt) {
    const double dx = grid.spacing(0);
    const auto max_abs = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double e : v) m = std::max(m, std::fabs(e));
        return m;
    };
    bool ok = max_abs(c.axx) * dt / (dx * dx) <= 0.25 && max_abs(c.bx) * dt / dx <= 0.5;
    if (grid.dim() == 2) {
        const double dy = grid.spacing(1);
        ok = ok && max_abs(c.ayy) * dt / (dy * dy) <= 0.25 && max_abs(c.by) * dt / dy <= 0.5;
    }
    return ok;
}

}  // namespace

FpResult solve_fokker_planck(const FpProblem& problem, unsigned workers) {
    const GridSpec& grid = problem.grid;
    grid.validate();
    problem.fields.validate();
    if (problem.fields.dim() != grid.dim()) {
        throw DimensionError("solve_fokker_planck: field dimension does not match the grid");
    }
    ScalarGrid p = initial_grid(problem.p0, grid);
    if (p.min_value() < 0.0) {
        throw InvalidParameter("solve_fokker_planck: initial density has negative values");
    }
    p.normalize();

    const bool time_dependent = problem.fields.depends_on_time();
    Coefficients coef = fp_coefficients(problem.fields, grid, 0.0);
    // Time-dependent fields: the bound is checked on the t = 0 coefficients.
    const PdeRunInfo info =
        choose_steps(problem.T, problem.n_t, [&](double dt) { return fp_stable(coef, grid, dt); });

    const std::size_t nx = grid.cells[0];
    const std::size_t ny = grid.dim() == 2 ? grid.cells[1] : 1;
    const bool two_d = grid.dim() == 2;
    const double dx = grid.spacing(0);
    const double dy = two_d ? grid.spacing(1) : 1.0;
    const double dt = info.dt;
    const double initial_mass = p.mass();
    const double limit = 1e3 * abs_sum(p.values);

    const std::size_t n = nx * ny;
    std::vector<double> bpx(n), bpy(two_d ? n : 0), qxx(n), qxy(two_d ? n : 0), qyy(two_d ? n : 0);
    // fx[j * (nx + 1) + i] is the flux through the face left of cell i.
    std::vector<double> fx((nx + 1) * ny, 0.0);
    std::vector<double> fy(two_d ? nx * (ny + 1) : 0, 0.0);
    std::vector<double> next(n);

    for (std::size_t step = 0; step < info.steps_taken; ++step) {
        if (time_dependent && step > 0) {
            coef = fp_coefficients(problem.fields, grid, dt * static_cast<double>(step));
        }
        const std::vector<double>& cur = p.values;
        for (std::size_t k = 0; k < n; ++k) {
            bpx[k] = coef.bx[k] * cur[k];
            qxx[k] = coef.axx[k] * cur[k];
            if (two_d) {
                bpy[k] = coef.by[k] * cur[k];
                qxy[k] = coef.axy[k] * cur[k];
                qyy[k] = coef.ayy[k] * cur[k];
            }
        }

        parallel_for(ny, workers, [&](std::size_t j) {
            const std::size_t row = j * nx;
            const std::size_t jm = j == 0 ? j : j - 1;
            const std::size_t jp = j + 1 == ny ? j : j + 1;
            const double cross_den = two_d && jp > jm ? static_cast<double>(jp - jm) * dy : 0.0;
            for (std::size_t i = 0; i + 1 < nx; ++i) {
                const std::size_t a = row + i;
                const std::size_t b = a + 1;
                double flux = 0.5 * (bpx[a] + bpx[b]) - 0.5 * (qxx[b] - qxx[a]) / dx;
                if (cross_den > 0.0) {
                    const double dqy = 0.5 * ((qxy[jp * nx + i] - qxy[jm * nx + i]) +
                                              (qxy[jp * nx + i + 1] - qxy[jm * nx + i + 1])) /
                                       cross_den;
                    flux -= 0.5 * dqy;
                }
                fx[j * (nx + 1) + i + 1] = flux;
            }
        });

        if (two_d) {
            parallel_for(ny - 1, workers, [&](std::size_t j) {
                const std::size_t row = j * nx;
                for (std::size_t i = 0; i < nx; ++i) {
                    const std::size_t a = row + i;
                    const std::size_t b = a + nx;
                    const std::size_t im = i == 0 ? i : i - 1;
                    const std::size_t ip = i + 1 == nx ? i : i + 1;
                    double flux = 0.5 * (bpy[a] + bpy[b]) - 0.5 * (qyy[b] - qyy[a]) / dy;
                    if (ip > im) {
                        const double dqx = 0.5 * ((qxy[row + ip] - qxy[row + im]) +
                                                  (qxy[row + nx + ip] - qxy[row + nx + im])) /
                                           (static_cast<double>(ip - im) * dx);
                        flux -= 0.5 * dqx;
                    }
                    fy[(j + 1) * nx + i] = flux;
                }
            });
        }

        parallel_for(ny, workers, [&](std::size_t j) {
            for (std::size_t i = 0; i < nx; ++i) {
                const std::size_t k = j * nx + i;
                double div = (fx[j * (nx + 1) + i + 1] - fx[j * (nx + 1) + i]) / dx;
                if (two_d) {
                    div += (fy[(j + 1) * nx + i] - fy[j * nx + i]) / dy;
                }
                next[k] = cur[k] - dt * div;
            }
        });
        p.values.swap(next);
        check_step(p.values, step + 1, limit);
    }

    FpResult result;
    result.info = info;
    const double final_mass = p.mass();
    result.relative_mass_drift = std::fabs(final_mass - initial_mass) / initial_mass;
    result.min_before_clip = p.min_value();
    double negative = 0.0;
    for (double& v : p.values) {
        if (v < 0.0) {
            negative -= v;
            v = 0.0;
        }
    }
    result.clipped_mass = negative * grid.cell_volume() / final_mass;
    p.normalize();
    result.grid = std::move(p);
    return result;
}

// ---------------------------------------------------------------------------

BackwardResult solve_backward_fk(const FieldSpec& fields, const FieldExpr& potential,
                                 const FieldExpr& payoff, double T, const GridSpec& grid,
                                 std::size_t n_t, unsigned workers) {
    grid.validate();
    fields.validate();
    if (grid.dim() != 1 || fields.dim() != 1) {
        throw DimensionError("solve_backward_fk: fields and grid must be one-dimensional");
    }
    const std::size_t nx = grid.cells[0];
    const double dx = grid.spacing(0);
    const bool time_dependent =
        fields.depends_on_time() || potential.depends_on(Var::T);

    std::vector<double> b(nx), a(nx), v(nx);
    auto load = [&](double t) {
        double s[2];
        for (std::size_t i = 0; i < nx; ++i) {
            const double x = grid.center(0, i);
            b[i] = fields.drift[0].eval(x, 0.0, t);
            fields.eval_diffusion(std::span<const double>(&x, 1), t,
                                  std::span<double>(s, fields.noise_dim()));
            double acc = 0.0;
            for (std::size_t c = 0; c < fields.noise_dim(); ++c) acc += s[c] * s[c];
            a[i] = acc;
            v[i] = potential.eval(x, 0.0, t);
        }
    };
    load(T);

    const PdeRunInfo info = choose_steps(T, n_t, [&](double dt) {
        double amax = 0.0;
        double bmax = 0.0;
        for (std::size_t i = 0; i < nx; ++i) {
            amax = std::max(amax, a[i]);
            bmax = std::max(bmax, std::fabs(b[i]));
        }
        return amax * dt / (dx * dx) <= 0.25 && bmax * dt / dx <= 0.5;
    });
    const double dtau = info.dt;

    ScalarGrid u(grid);
    for (std::size_t i = 0; i < nx; ++i) u.values[i] = payoff.eval(grid.center(0, i), 0.0, T);
    const double limit = 1e6 * std::max(abs_sum(u.values), 1.0);

    std::vector<double> decay(nx);
    for (std::size_t i = 0; i < nx; ++i) decay[i] = std::exp(-v[i] * dtau);
    std::vector<double> next(nx);
    const std::size_t chunks = std::min<std::size_t>(nx, 64);
    for (std::size_t step = 0; step < info.steps_taken; ++step) {
        if (time_dependent && step > 0) {
            load(T - dtau * static_cast<double>(step));
            for (std::size_t i = 0; i < nx; ++i) decay[i] = std::exp(-v[i] * dtau);
        }
        const std::vector<double>& cur = u.values;
        parallel_for(chunks, workers, [&](std::size_t c) {
            const std::size_t begin = nx * c / chunks;
            const std::size_t end = nx * (c + 1) / chunks;
            for (std::size_t i = begin; i < end; ++i) {
                const double w = cur[i == 0 ? i : i - 1];
                const double e = cur[i + 1 == nx ? i : i + 1];
                const double lu = b[i] * (e - w) / (2.0 * dx) + 0.5 * a[i] * (e - 2.0 * cur[i] + w) / (dx * dx);
                next[i] = decay[i] * (cur[i] + dtau * lu);
            }
        });
        u.values.swap(next);
        check_step(u.values, step + 1, limit);
    }
    return {std::move(u), info};
}

}  // namespace itolab
