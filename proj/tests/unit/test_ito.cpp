#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "itolab/errors.hpp"
#include "itolab/ito.hpp"
#include "itolab/sde.hpp"
#include "itolab/stats.hpp"

using namespace itolab;

namespace {

Path bm(std::uint64_t seed, std::uint64_t id, double T, std::size_t n, std::size_t d = 1) {
    RngStream s(seed, id);
    return brownian_path(s, std::vector<double>(d, 0.0), T, n);
}

std::vector<double> component(const Path& p, std::size_t k = 0) {
    std::vector<double> v(p.n_nodes());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = p.at(i, k);
    return v;
}

TestFunction test_function(const char* f, std::vector<const char*> grad,
                           std::vector<const char*> hess) {
    TestFunction tf;
    tf.f = parse(f);
    for (auto g : grad) tf.gradient.push_back(parse(g));
    for (auto h : hess) tf.hessian.push_back(parse(h));
    return tf;
}

}  // namespace

TEST(ItoIntegral, ZeroIntegrand) {
    const Path w = bm(1, 0, 1.0, 100);
    EXPECT_EQ(ito_integral(std::vector<double>(101, 0.0), w), 0.0);
}

TEST(ItoIntegral, UnitIntegrandTelescopes) {
    const Path w = bm(1, 1, 1.0, 1000);
    EXPECT_NEAR(ito_integral(std::vector<double>(1001, 1.0), w), w.terminal()[0] - w.at(0), 1e-12);
}

TEST(ItoIntegral, WdWIdentity) {
    for (std::uint64_t i = 0; i < 20; ++i) {
        const Path w = bm(2, i, 1.0, 1000);
        double qv = 0.0;
        for (std::size_t k = 0; k < 1000; ++k) qv += w.increment(k) * w.increment(k);
        const double wt = w.terminal()[0];
        const double expected = 0.5 * (wt * wt - qv);
        const double got = ito_integral(component(w), w);
        EXPECT_LE(std::fabs(scaled_residual(got - expected, expected)), 1e-12);
    }
}

TEST(ItoIntegral, LeftEndpoint) {
    const Path w(1.0, 2, 1, {0.0, 1.0, 3.0});
    EXPECT_EQ(ito_integral(std::vector<double>{5.0, 7.0, 100.0}, w), 5.0 * 1.0 + 7.0 * 2.0);
}

TEST(ItoIntegral, MatrixIntegrand) {
    const Path w = bm(3, 0, 1.0, 200, 2);
    std::vector<double> values;
    for (std::size_t i = 0; i <= 200; ++i) {
        const double t = w.times()[i];
        values.insert(values.end(), {1.0, 0.0, t, 2.0});
    }
    const auto out = ito_integral(Integrand::matrix(201, 2, 2, values), w);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_NEAR(out[0], w.terminal()[0], 1e-12);
    std::vector<double> t(201);
    for (std::size_t i = 0; i <= 200; ++i) t[i] = w.times()[i];
    const Path w1(1.0, 200, 1, component(w, 0));
    const Path w2(1.0, 200, 1, component(w, 1));
    EXPECT_NEAR(out[1], ito_integral(t, w1) + 2.0 * ito_integral(std::vector<double>(201, 1.0), w2),
                1e-12);
}

TEST(ItoIntegral, GridMismatch) {
    const Path w = bm(1, 0, 1.0, 100);
    EXPECT_THROW(ito_integral(std::vector<double>(100, 1.0), w), DimensionError);
    const Path w2 = bm(1, 0, 1.0, 100, 2);
    EXPECT_THROW(ito_integral(std::vector<double>(101, 1.0), w2), DimensionError);
}

TEST(ItoIntegral, Linearity) {
    for (std::uint64_t i = 0; i < 20; ++i) {
        const Path w = bm(4, i, 1.0, 1000);
        std::vector<double> f(1001), g = component(w), h(1001);
        for (std::size_t k = 0; k <= 1000; ++k) {
            f[k] = w.times()[k];
            h[k] = 2.0 * f[k] - 3.0 * g[k];
        }
        const double lhs = ito_integral(h, w);
        const double rhs = 2.0 * ito_integral(f, w) - 3.0 * ito_integral(g, w);
        EXPECT_LE(std::fabs(scaled_residual(lhs - rhs, rhs)), 1e-12);
    }
}

TEST(QuadraticCovariation, LinearPath) {
    std::vector<double> states(1001);
    for (std::size_t i = 0; i <= 1000; ++i) states[i] = static_cast<double>(i) / 1000.0;
    const Path x(1.0, 1000, 1, states);
    EXPECT_NEAR(quadratic_covariation(x, x), 1e-3, 1e-15);
}

TEST(QuadraticCovariation, BrownianMean) {
    RunningStats self, cross;
    for (std::uint64_t i = 0; i < 100; ++i) {
        const Path a = bm(5, 2 * i, 1.0, 1000);
        const Path b = bm(5, 2 * i + 1, 1.0, 1000);
        self.push(quadratic_covariation(a, a));
        cross.push(quadratic_covariation(a, b));
    }
    const double dt = 1e-3;
    EXPECT_NEAR(self.mean(), 1.0, 4.0 * std::sqrt(2.0 * dt));
    EXPECT_NEAR(cross.mean(), 0.0, 4.0 * std::sqrt(dt));
}

TEST(QuadraticCovariation, GridMismatch) {
    EXPECT_THROW(quadratic_covariation(bm(1, 0, 1.0, 10), bm(1, 0, 1.0, 20)), DimensionError);
}

TEST(IntegrationByParts, RandomPathsExact) {
    for (std::uint64_t i = 0; i < 100; ++i) {
        const Path x = bm(6, 2 * i, 1.0, 500);
        const Path y = bm(6, 2 * i + 1, 1.0, 500);
        EXPECT_LE(integration_by_parts_residual(x, y), 1e-10);
    }
}

TEST(IntegrationByParts, ConstantPath) {
    const Path y = bm(7, 0, 1.0, 300);
    const Path c(1.0, 300, 1, std::vector<double>(301, 2.5));
    EXPECT_LE(integration_by_parts_residual(c, y), 1e-12);
    EXPECT_NEAR(ito_integral(component(c), y), 2.5 * (y.terminal()[0] - y.at(0)), 1e-12);
}

TEST(IntegrationByParts, IndependentGbmPaths) {
    const SdeProblem problem{gbm_fields(0.5, 0.2), {1.0}, 1.0, 500};
    for (std::uint64_t i = 0; i < 20; ++i) {
        RngStream a(8, 2 * i);
        RngStream b(8, 2 * i + 1);
        const Path x = euler_maruyama(problem, a);
        const Path y = euler_maruyama(problem, b);
        EXPECT_LE(integration_by_parts_residual(x, y), 1e-10);
    }
}

TEST(ItoFormula, SquareOnBrownianIsExact) {
    const FieldSpec bmf = brownian_fields(1);
    const auto tf = test_function("x^2", {"2*x"}, {"2"});
    for (std::uint64_t i = 0; i < 100; ++i) {
        const Path w = bm(9, i, 1.0, 1000);
        EXPECT_LE(ito_formula_residual(w, w, bmf, tf, QuadraticTerm::Realized), 1e-10);
    }
}

TEST(ItoFormula, LinearIsExact) {
    const FieldSpec fields = gbm_fields(0.5, 0.2);
    const SdeProblem problem{fields, {1.0}, 1.0, 400};
    const auto tf = test_function("3*x - 1", {"3"}, {"0"});
    for (std::uint64_t i = 0; i < 100; ++i) {
        RngStream s(10, i);
        const DrivenPath p = euler_maruyama_driven(problem, s);
        EXPECT_LE(ito_formula_residual(p.x, p.w, fields, tf, QuadraticTerm::Expected), 1e-10);
        EXPECT_LE(ito_formula_residual(p.x, p.w, fields, tf, QuadraticTerm::Realized), 1e-10);
    }
}

TEST(ItoFormula, TwoDimensionalQuadraticRealized) {
    const FieldSpec fields = make_field_spec({"0", "0"}, {{"1", "0.5"}, {"0", "x"}});
    const SdeProblem problem{fields, {0.5, -0.2}, 1.0, 300};
    const auto tf = test_function("x*y + x^2", {"y + 2*x", "x"}, {"2", "1", "1", "0"});
    for (std::uint64_t i = 0; i < 20; ++i) {
        RngStream s(11, i);
        const DrivenPath p = euler_maruyama_driven(problem, s);
        EXPECT_LE(ito_formula_residual(p.x, p.w, fields, tf, QuadraticTerm::Realized), 1e-10);
    }
}

TEST(ItoFormula, ExpResidualDecaysLikeSqrtDt) {
    const FieldSpec bmf = brownian_fields(1);
    const auto tf = test_function("exp(x)", {"exp(x)"}, {"exp(x)"});
    RunningStats coarse, fine;
    for (std::uint64_t i = 0; i < 100; ++i) {
        RngStream s(12, i);
        const Path w = brownian_path(s, std::vector<double>{0.0}, 1.0, 1000);
        std::vector<double> half(501);
        for (std::size_t k = 0; k <= 500; ++k) half[k] = w.at(2 * k);
        const Path wc(1.0, 500, 1, half);
        coarse.push(ito_formula_residual(wc, wc, bmf, tf));
        fine.push(ito_formula_residual(w, w, bmf, tf));
    }
    const double ratio = coarse.mean() / fine.mean();
    EXPECT_NEAR(ratio, std::sqrt(2.0), 0.3 * std::sqrt(2.0));
}

TEST(ItoFormula, MissingDerivativesRejected) {
    const FieldSpec bmf = brownian_fields(1);
    const Path w = bm(1, 0, 1.0, 10);
    auto tf = test_function("x^2", {}, {"2"});
    EXPECT_THROW(ito_formula_residual(w, w, bmf, tf), InvalidParameter);
    tf = test_function("x^2", {"2*x"}, {});
    EXPECT_THROW(ito_formula_residual(w, w, bmf, tf), InvalidParameter);
}

TEST(ItoFormula, TimeDependentFunction) {
    const FieldSpec bmf = brownian_fields(1);
    auto tf = test_function("x^2 - t", {"2*x"}, {"2"});
    tf.time_derivative = parse("-1");
    for (std::uint64_t i = 0; i < 10; ++i) {
        const Path w = bm(13, i, 1.0, 500);
        EXPECT_LE(ito_formula_residual(w, w, bmf, tf, QuadraticTerm::Realized), 1e-10);
    }
}

TEST(StatChecks, IsometryUnitIntegrand) {
    StatCheckConfig cfg{1.0, 100, 5000, 3, 1};
    const auto r = check_isometry([](double) { return 1.0; }, cfg);
    EXPECT_NEAR(r.analytic_rhs, 1.0, 1e-12);
    EXPECT_TRUE(r.pass);
}

TEST(StatChecks, IsometryZeroIntegrand) {
    StatCheckConfig cfg{1.0, 100, 100, 3, 1};
    const auto r = check_isometry([](double) { return 0.0; }, cfg);
    EXPECT_EQ(r.mc_lhs, 0.0);
    EXPECT_EQ(r.analytic_rhs, 0.0);
    EXPECT_TRUE(r.pass);
}

TEST(StatChecks, IsometryLinearIntegrandRhs) {
    StatCheckConfig cfg{1.0, 1000, 2000, 4, 1};
    const auto r = check_isometry([](double t) { return t; }, cfg);
    // sum_{i<n} (i/n)^2 / n = (n-1)(2n-1) / (6 n^2)
    const double n = 1000.0;
    EXPECT_NEAR(r.analytic_rhs, (n - 1) * (2 * n - 1) / (6 * n * n), 1e-14);
    EXPECT_TRUE(r.pass);
}

TEST(StatChecks, RequiresTwoPaths) {
    StatCheckConfig cfg{1.0, 10, 1, 0, 1};
    EXPECT_THROW(check_isometry([](double) { return 1.0; }, cfg), InvalidParameter);
}

TEST(StatChecks, MartingaleOfBrownianMotion) {
    StatCheckConfig cfg{1.0, 100, 20000, 5, 1};
    const std::vector<double> cps{0.25, 0.5, 1.0};
    const auto r = check_martingale_zero_mean([](double, double) { return 1.0; }, cfg, cps);
    ASSERT_EQ(r.checkpoints.size(), 3u);
    for (const auto& c : r.checkpoints) {
        EXPECT_NEAR(c.std_error, std::sqrt(c.t / cfg.n_paths), 0.05 * std::sqrt(c.t / cfg.n_paths));
        EXPECT_LE(std::fabs(c.mean), 4.0 * std::sqrt(c.t / cfg.n_paths));
    }
    EXPECT_TRUE(r.pass);
}

TEST(StatChecks, MartingaleZeroIntegrand) {
    StatCheckConfig cfg{1.0, 50, 100, 5, 1};
    const std::vector<double> cps{0.5, 1.0};
    const auto r = check_martingale_zero_mean([](double, double) { return 0.0; }, cfg, cps);
    for (const auto& c : r.checkpoints) {
        EXPECT_EQ(c.mean, 0.0);
        EXPECT_EQ(c.std_error, 0.0);
    }
}

TEST(StatChecks, MartingaleRejectsOffGridCheckpoint) {
    StatCheckConfig cfg{1.0, 10, 100, 5, 1};
    const std::vector<double> cps{0.33};
    EXPECT_THROW(check_martingale_zero_mean([](double t, double) { return t; }, cfg, cps),
                 InvalidParameter);
}

TEST(StatChecks, QuadraticVariation) {
    StatCheckConfig cfg{1.0, 500, 4000, 6, 1};
    const auto r = check_quadratic_variation([](double t) { return t; }, cfg);
    EXPECT_LE(r.max_identity_residual, 1e-10);
    EXPECT_TRUE(r.pass);
}

TEST(StatChecks, ExactIdentities) {
    StatCheckConfig cfg{1.0, 1000, 200, 7, 1};
    const auto r = check_exact_identities(cfg);
    EXPECT_LE(r.max_linearity_residual, 1e-12);
    EXPECT_LE(r.max_wdw_residual, 1e-12);
    EXPECT_TRUE(r.pass);
}

TEST(StatChecks, WorkerCountDoesNotChangeResults) {
    StatCheckConfig one{1.0, 200, 3000, 8, 1};
    StatCheckConfig many = one;
    many.workers = 3;
    const auto a = check_isometry([](double t) { return t; }, one);
    const auto b = check_isometry([](double t) { return t; }, many);
    EXPECT_EQ(a.mc_lhs, b.mc_lhs);
    EXPECT_EQ(a.std_error, b.std_error);
}
