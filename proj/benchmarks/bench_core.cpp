#include <benchmark/benchmark.h>

#include <array>
#include <vector>

#include "itolab/expr.hpp"
#include "itolab/pde.hpp"
#include "itolab/rng.hpp"
#include "itolab/sde.hpp"

using namespace itolab;

namespace {

const FieldSpec& swirl_fields() {
    static const FieldSpec f = make_field_spec(
        {"-0.3*x + 1.5*sin(y)", "-0.3*y - 1.5*cos(x)"},
        {{"0.3 + 0.2*abs(sin(x))", "0"}, {"0", "0.3 + 0.2*abs(cos(y))"}});
    return f;
}

void BM_StandardNormal(benchmark::State& state) {
    RngStream s(1, 0);
    for (auto _ : state) benchmark::DoNotOptimize(s.standard_normal());
}
BENCHMARK(BM_StandardNormal);

void BM_ExprEval(benchmark::State& state) {
    const FieldExpr e = parse("-0.3*x + 1.5*sin(y) + 0.2*abs(cos(x*y)) - exp(-t)");
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(e.eval(x, 0.7, 0.2));
        x += 1e-9;
    }
}
BENCHMARK(BM_ExprEval);

void BM_EulerMaruyamaPath(benchmark::State& state) {
    const SdeProblem problem{swirl_fields(), {0.0, 0.0}, 1.0, static_cast<std::size_t>(state.range(0))};
    std::uint64_t id = 0;
    for (auto _ : state) {
        RngStream s(1, id++);
        benchmark::DoNotOptimize(euler_maruyama(problem, s));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EulerMaruyamaPath)->Arg(100)->Arg(1000);

void BM_FokkerPlanckStep(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const GridSpec g{{-5.0, -5.0}, {5.0, 5.0}, {n, n}};
    const FpProblem p{swirl_fields(), parse("exp(-x^2 - y^2)"), 0.01, 10, g};
    for (auto _ : state) benchmark::DoNotOptimize(solve_fokker_planck(p));
    state.SetItemsProcessed(state.iterations() * 10 * static_cast<long>(n * n));
}
BENCHMARK(BM_FokkerPlanckStep)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
