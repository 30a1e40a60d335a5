#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "itolab/errors.hpp"
#include "itolab/quadrature.hpp"

using namespace itolab;

TEST(GaussLegendre, ExactForPolynomials) {
    for (std::size_t n : {1u, 2u, 5u, 10u, 20u}) {
        const auto rule = gauss_legendre(n);
        ASSERT_EQ(rule.nodes.size(), n);
        for (std::size_t k = 0; k <= 2 * n - 1; ++k) {
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], k);
            const double exact = k % 2 == 1 ? 0.0 : 2.0 / (k + 1);
            EXPECT_NEAR(sum, exact, 1e-13) << "n=" << n << " k=" << k;
        }
    }
}

TEST(GaussLegendre, NodesAscendingAndSymmetric) {
    const auto rule = gauss_legendre(20);
    for (std::size_t i = 1; i < 20; ++i) EXPECT_LT(rule.nodes[i - 1], rule.nodes[i]);
    for (std::size_t i = 0; i < 20; ++i) EXPECT_NEAR(rule.nodes[i], -rule.nodes[19 - i], 1e-15);
    EXPECT_THROW(gauss_legendre(0), InvalidParameter);
}

TEST(Composite, GaussianMass) {
    const double v = integrate_composite(
        [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2 * std::numbers::pi); }, -10, 10);
    EXPECT_NEAR(v, 1.0, 1e-13);
}

TEST(Adaptive, NarrowFeatureAtBreakpoint) {
    const double s = 1e-3;
    auto f = [s](double x) {
        return std::exp(-0.5 * (x - 0.3) * (x - 0.3) / (s * s)) / (s * std::sqrt(2 * std::numbers::pi));
    };
    const std::array<double, 1> bp{0.3};
    EXPECT_NEAR(integrate_adaptive(f, -10, 10, bp), 1.0, 1e-10);
}

TEST(Adaptive, Kink) {
    const double v = integrate_adaptive([](double x) { return std::fabs(x - 0.1234); }, -1, 1);
    EXPECT_NEAR(v, 0.5 * (1.1234 * 1.1234 + 0.8766 * 0.8766), 1e-11);
}

TEST(Adaptive, RejectsEmptyInterval) {
    EXPECT_THROW(integrate_adaptive([](double) { return 1.0; }, 1, 1), InvalidParameter);
}

TEST(Adaptive, NonConvergenceRaises) {
    AdaptiveOptions opt;
    opt.max_depth = 2;
    EXPECT_THROW(integrate_adaptive([](double x) { return std::sin(1.0 / (x + 1e-9)); }, -1, 1, {}, opt),
                 NumericError);
}
