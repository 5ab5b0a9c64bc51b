#include <benchmark/benchmark.h>

#include <random>

#include "fourfactor/operators.hpp"

namespace {

struct Setup {
    ff::OperatorSet ops;
    std::vector<double> in, out;

    explicit Setup(int n)
    {
        const ff::Grid g = ff::build_grid(ff::GridSpec::box(16, 1, 1, 0.25, 2 * n, n, n, n));
        ops = ff::assemble(ff::ModelParams{}, g, 1e-3,
                           ff::BoundaryRules::for_payoff(ff::PayoffSpec::european(5)));
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        in.resize(g.size());
        for (double& x : in)
            x = u(rng);
        out.assign(g.size(), 0.0);
    }
};

template <auto Fn>
void explicit_kernel(benchmark::State& state)
{
    Setup s(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        Fn(s.ops, s.in, s.out);
        benchmark::DoNotOptimize(s.out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(s.in.size()));
}

template <auto Fn>
void line_solves(benchmark::State& state)
{
    Setup s(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        s.out = s.in;
        for (int a = 0; a < 4; ++a)
            Fn(s.ops, a, 0.5, s.out);
        benchmark::DoNotOptimize(s.out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(s.in.size()));
}

} // namespace

BENCHMARK(explicit_kernel<ff::kernels::serial::apply_explicit>)->Name("apply_explicit/serial")->Arg(12)->Arg(20);
BENCHMARK(explicit_kernel<ff::kernels::omp::apply_explicit>)->Name("apply_explicit/omp")->Arg(12)->Arg(20);
BENCHMARK(line_solves<ff::kernels::serial::solve_axis>)->Name("solve_axes/serial")->Arg(12)->Arg(20);
BENCHMARK(line_solves<ff::kernels::omp::solve_axis>)->Name("solve_axes/omp")->Arg(12)->Arg(20);

BENCHMARK_MAIN();
