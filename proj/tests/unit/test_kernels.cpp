#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "itolab/errors.hpp"
#include "itolab/kernels.hpp"
#include "itolab/quadrature.hpp"
#include "itolab/rng.hpp"
#include "itolab/sde.hpp"

using namespace itolab;

TEST(HeatKernel, ParamsValidate) {
    EXPECT_THROW((HeatKernelParams{0.0, 1.0, 1}.validate()), InvalidParameter);
    EXPECT_THROW((HeatKernelParams{1.0, 0.0, 1}.validate()), InvalidParameter);
    EXPECT_THROW((HeatKernelParams{1.0, 1.0, 3}.validate()), InvalidParameter);
    EXPECT_NO_THROW((HeatKernelParams{0.5, 2.0, 2}.validate()));
}

TEST(HeatKernel, BrownianConventionsAgree) {
    const std::array<double, 2> x{0.3, -0.2};
    const std::array<double, 2> y{-1.0, 0.7};
    EXPECT_NEAR(bm_transition_density(1.7, x, y), heat_kernel({0.5, 1.7, 2}, x, y), 1e-16);
}

TEST(HeatKernel, UnitMass) {
    for (double kappa : {0.5, 1.0, 3.0}) {
        for (double t : {0.01, 1.0, 5.0}) {
            const HeatKernelParams k{kappa, t, 1};
            const std::array<double, 1> x{0.4};
            const double w = 12.0 * std::sqrt(2 * kappa * t);
            const double m = integrate_adaptive(
                [&](double y) {
                    const std::array<double, 1> yy{y};
                    return heat_kernel(k, x, yy);
                },
                0.4 - w, 0.4 + w);
            EXPECT_NEAR(m, 1.0, 1e-12);
        }
    }
}

TEST(HeatKernel, SolvesHeatEquation) {
    const HeatKernelParams k{0.7, 0.9, 1};
    const double h = 1e-4;
    const std::array<double, 1> x{0.0};
    auto p = [&](double t, double y) {
        const std::array<double, 1> yy{y};
        return heat_kernel({0.7, t, 1}, x, yy);
    };
    for (double y : {-1.0, 0.2, 1.5}) {
        const double dt = (p(k.t + h, y) - p(k.t - h, y)) / (2 * h);
        const double lap = (p(k.t, y + h) - 2 * p(k.t, y) + p(k.t, y - h)) / (h * h);
        EXPECT_NEAR(dt, 0.7 * lap, 1e-6);
    }
}

TEST(ChapmanKolmogorov, RandomTuples) {
    RngStream s(2024, 0);
    for (int i = 0; i < 10; ++i) {
        const double a = 0.05 + 2.0 * s.uniform();
        const double b = 0.05 + 2.0 * s.uniform();
        const double x = -2.0 + 4.0 * s.uniform();
        const double y = -2.0 + 4.0 * s.uniform();
        EXPECT_LE(chapman_kolmogorov_gap(a, b, x, y), 1e-8);
    }
    EXPECT_THROW(chapman_kolmogorov_gap(0.0, 1.0, 0, 0), InvalidParameter);
}

TEST(HeatSolution, GaussianWidening) {
    const FieldExpr f = parse("exp(-x^2 / 2) / 2.5066282746310002");
    for (double kappa : {0.5, 1.0}) {
        const double t = 0.8;
        const double v = 1.0 + 2 * kappa * t;
        for (double x0 : {-1.0, 0.0, 0.6}) {
            const std::array<double, 1> x{x0};
            const double exact = std::exp(-x0 * x0 / (2 * v)) / std::sqrt(2 * std::numbers::pi * v);
            EXPECT_NEAR(heat_solution(f, x, {kappa, t, 1}), exact, 1e-12);
        }
    }
}

TEST(HeatSolution, TwoDimensional) {
    const FieldExpr f = parse("exp(-(x^2 + y^2) / 2) / 6.283185307179586");
    const std::array<double, 2> x{0.5, -0.3};
    const double v = 1.0 + 2 * 0.5 * 1.0;
    const double exact = std::exp(-(0.25 + 0.09) / (2 * v)) / (2 * std::numbers::pi * v);
    EXPECT_NEAR(heat_solution(f, x, {0.5, 1.0, 2}), exact, 1e-10);
}

TEST(HeatSolution, PreservesConstantsAndMass) {
    const std::array<double, 1> x{0.3};
    EXPECT_NEAR(heat_solution(parse("2.5"), x, {1.0, 1.0, 1}), 2.5, 1e-12);
    // u(t, x) of the quadratic: x^2 + 2 kappa t
    EXPECT_NEAR(heat_solution(parse("x^2"), x, {1.0, 0.5, 1}), 0.09 + 1.0, 1e-11);
    const HeatKernelParams k{0.5, 1.0, 1};
    const FieldExpr bump = parse("exp(-(x - 1)^2)");
    const double mass = integrate_adaptive(
        [&](double y) {
            const std::array<double, 1> yy{y};
            return heat_solution(bump, yy, k);
        },
        -12, 14, {}, AdaptiveOptions{1e-11, 1e-10});
    EXPECT_NEAR(mass, std::sqrt(std::numbers::pi), 1e-9);
}

TEST(HeatSolution, DimensionMismatch) {
    const std::array<double, 2> x{0.0, 0.0};
    EXPECT_THROW(heat_solution(parse("x"), x, {1.0, 1.0, 1}), DimensionError);
}

TEST(StochasticRepresentation, MatchesHeatSolution) {
    const FieldExpr f = parse("exp(-x^2)");
    const std::array<double, 1> x{0.4};
    const double exact = heat_solution(f, x, {0.5, 1.0, 1});
    const auto mc = stochastic_representation(f, x, 1.0, 0.5, 40000, 11, 1, 0);
    EXPECT_NEAR(mc.mean, exact, 4.0 * mc.std_error);
}

TEST(StochasticRepresentation, SecondMoment) {
    const std::array<double, 1> x{0.0};
    const auto mc = stochastic_representation(parse("x^2"), x, 1.0, 0.5, 20000, 3, 10, 0);
    EXPECT_NEAR(mc.mean, 1.0, 4.0 * mc.std_error);
}

TEST(StochasticRepresentation, WorkerInvariant) {
    const std::array<double, 2> x{0.1, 0.2};
    const FieldExpr f = parse("sin(x)*cos(y)");
    const auto a = stochastic_representation(f, x, 0.5, 1.0, 3000, 8, 5, 1);
    const auto b = stochastic_representation(f, x, 0.5, 1.0, 3000, 8, 5, 4);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.std_error, b.std_error);
}

TEST(Generator, HalfLaplacianOnQuadratics) {
    const FieldSpec bm = brownian_fields(2);
    const std::array<double, 2> x{0.7, -1.3};
    EXPECT_NEAR(apply_generator(bm, parse("x^2 + 3*y^2 - x*y"), x), 0.5 * (2 + 6), 1e-4);
    EXPECT_NEAR(apply_generator(brownian_fields(1), parse("x^2"), std::array<double, 1>{2.0}), 1.0,
                1e-4);
}

TEST(Generator, LogUnderGbm) {
    const FieldSpec f = gbm_fields(0.5, 0.2);
    EXPECT_NEAR(apply_generator(f, parse("log(x)"), std::array<double, 1>{2.0}), 0.48, 1e-4);
}

TEST(Generator, DriftTerm) {
    const FieldSpec f = make_field_spec({"-x", "1"}, {{"0", "0"}, {"0", "0"}});
    EXPECT_NEAR(apply_generator(f, parse("x*y"), std::array<double, 2>{2.0, 3.0}), -2.0 * 3.0 + 2.0,
                1e-6);
}

TEST(Generator, ShortTimeGapShrinks) {
    const FieldSpec f = make_field_spec({"-x"}, {{"1"}});
    const FieldExpr g = parse("sin(x)");
    const std::array<double, 1> x{0.8};
    const auto a = generator_limit_gap(f, g, x, 0.04, 20000, 5, 16, 0);
    const auto b = generator_limit_gap(f, g, x, 0.02, 20000, 5, 16, 0);
    EXPECT_NEAR(a.generator, b.generator, 1e-12);
    EXPECT_LT(a.std_error, 0.1 * a.gap);
    const double ratio = a.gap / b.gap;
    EXPECT_GT(ratio, 1.0);
    EXPECT_LT(ratio, 3.0);
}
