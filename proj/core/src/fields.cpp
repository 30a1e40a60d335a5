#include "itolab/fields.hpp"

#include "itolab/errors.hpp"

namespace itolab {

void FieldSpec::validate() const {
    const std::size_t d = drift.size();
    if (d == 0 || d > 2) {
        throw DimensionError("field spec: drift must have 1 or 2 components");
    }
    if (diffusion.size() != d) {
        throw DimensionError("field spec: diffusion must have one row per drift component");
    }
    const std::size_t m = diffusion.front().size();
    if (m == 0 || m > 2) {
        throw DimensionError("field spec: diffusion must have 1 or 2 columns");
    }
    for (const auto& row : diffusion) {
        if (row.size() != m) {
            throw DimensionError("field spec: diffusion rows differ in length");
        }
    }
}

bool FieldSpec::diagonal_diffusion() const {
    if (dim() != noise_dim()) {
        return false;
    }
    for (std::size_t i = 0; i < diffusion.size(); ++i) {
        for (std::size_t j = 0; j < diffusion[i].size(); ++j) {
            if (i == j) continue;
            const auto c = diffusion[i][j].constant_value();
            if (!c || *c != 0.0) {
                return false;
            }
        }
    }
    return true;
}

bool FieldSpec::depends_on_time() const {
    for (const auto& e : drift) {
        if (e.depends_on(Var::T)) return true;
    }
    for (const auto& row : diffusion) {
        for (const auto& e : row) {
            if (e.depends_on(Var::T)) return true;
        }
    }
    return false;
}

void FieldSpec::eval_drift(std::span<const double> x, double t, std::span<double> out) const {
    for (std::size_t i = 0; i < drift.size(); ++i) {
        out[i] = drift[i].eval_state(x, t);
    }
}

void FieldSpec::eval_diffusion(std::span<const double> x, double t, std::span<double> out) const {
    const std::size_t m = noise_dim();
    for (std::size_t i = 0; i < diffusion.size(); ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            out[i * m + j] = diffusion[i][j].eval_state(x, t);
        }
    }
}

void FieldSpec::eval_diffusion_tensor(std::span<const double> x, double t,
                                      std::span<double> out) const {
    const std::size_t d = dim();
    const std::size_t m = noise_dim();
    double sigma[4];
    eval_diffusion(x, t, std::span<double>(sigma, d * m));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < m; ++k) {
                s += sigma[i * m + k] * sigma[j * m + k];
            }
            out[i * d + j] = s;
        }
    }
}

FieldSpec make_field_spec(const std::vector<std::string>& drift,
                          const std::vector<std::vector<std::string>>& diffusion) {
    FieldSpec spec;
    for (const auto& s : drift) {
        spec.drift.push_back(parse(s));
    }
    for (const auto& row : diffusion) {
        std::vector<FieldExpr> parsed;
        for (const auto& s : row) {
            parsed.push_back(parse(s));
        }
        spec.diffusion.push_back(std::move(parsed));
    }
    spec.validate();
    return spec;
}

FieldSpec brownian_fields(std::size_t d) {
    FieldSpec spec;
    spec.drift.assign(d, FieldExpr::constant(0.0));
    spec.diffusion.assign(d, std::vector<FieldExpr>(d, FieldExpr::constant(0.0)));
    for (std::size_t i = 0; i < d; ++i) {
        spec.diffusion[i][i] = FieldExpr::constant(1.0);
    }
    spec.validate();
    return spec;
}

}  // namespace itolab
