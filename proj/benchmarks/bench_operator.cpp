#include "nonloc/dirichlet_solver.hpp"
#include "nonloc/operator_eval.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace nonloc;

namespace {

GridFunction bump(const Domain& d) {
    return sample(d, [](const Point& x) {
        const double r2 = x[0] * x[0] + x[1] * x[1];
        return r2 < 1.0 ? std::pow(1.0 - r2, 4) : 0.0;
    });
}

void BM_OperatorField1d(benchmark::State& state) {
    const Domain d = Domain::cube(1, -1.0, 1.0, static_cast<int>(state.range(0)));
    const GridFunction u = bump(d);
    const Nonlinearity G = lookup_nonlinearity("cubic(0.1)");
    const KernelParams k(1, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_operator_field(u, G, k));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_OperatorField1d)->RangeMultiplier(2)->Range(256, 4096)->Complexity();

void BM_OperatorField2d(benchmark::State& state) {
    const Domain d = Domain::cube(2, -1.0, 1.0, static_cast<int>(state.range(0)));
    const GridFunction u = bump(d);
    const Nonlinearity G = lookup_nonlinearity("cubic(0.1)");
    const KernelParams k(2, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_operator_field(u, G, k));
    }
}
BENCHMARK(BM_OperatorField2d)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SolveBall(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const Domain d = Domain::cube(dim, -1.0, 1.0, static_cast<int>(state.range(1)), Ball{1.0, {0.0, 0.0}});
    const ProblemSpec p{d, lookup_nonlinearity("cubic(0.1)"), KernelParams(dim, 1.0), lookup_source("affine(0.1)"),
                        std::nullopt, {}, {}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve(p));
    }
}
BENCHMARK(BM_SolveBall)->Args({1, 256})->Args({2, 32})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
