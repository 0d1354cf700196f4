#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "srbw/action.hpp"
#include "srbw/admissible.hpp"
#include "srbw/dirichlet.hpp"
#include "srbw/mcmc.hpp"

namespace {

void BM_SolveRecursive(benchmark::State& state) {
    const int M = static_cast<int>(state.range(0));
    const auto boundary = srbw::standard_boundary(M, 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(srbw::solve_recursive(boundary));
    state.SetComplexityN(1 << M);
}
BENCHMARK(BM_SolveRecursive)->Arg(10)->Arg(14)->Arg(18)->Complexity();

void BM_SolveClosedForm(benchmark::State& state) {
    const int M = static_cast<int>(state.range(0));
    const auto boundary = srbw::standard_boundary(M, 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(srbw::solve_closed_form(boundary));
    state.SetComplexityN(1 << M);
}
BENCHMARK(BM_SolveClosedForm)->Arg(10)->Arg(14)->Arg(18)->Complexity();

void BM_InteractionCount(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> pos(-100.0, 100.0);
    std::vector<double> xs(m);
    for (auto& x : xs) x = pos(rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(srbw::interaction_count(xs, 1.0));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_InteractionCount)->Range(1 << 8, 1 << 18)->Complexity();

void BM_Trajectory(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    const srbw::ModelParams params{N, 1.0, 1.0};
    const int K = srbw::optimal_K(params).k_dyadic;
    for (auto _ : state)
        benchmark::DoNotOptimize(srbw::build_trajectory(params, K));
}
BENCHMARK(BM_Trajectory)->Arg(12)->Arg(15)->Arg(18);

void BM_MetropolisStep(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    const srbw::ModelParams params{N, 1.0, 1.0};
    auto chain = srbw::mcmc::make_chain(params, 99);
    for (auto _ : state)
        benchmark::DoNotOptimize(srbw::mcmc::metropolis_step(chain, 0.8));
}
BENCHMARK(BM_MetropolisStep)->Arg(4)->Arg(6)->Arg(8);

} // namespace

BENCHMARK_MAIN();
