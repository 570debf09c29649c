#include <benchmark/benchmark.h>

#include "openqb/jc_dispersive.hpp"
#include "openqb/lindblad.hpp"
#include "openqb/rabi_perturbative.hpp"

using namespace openqb;

namespace {

PhysicalParams rabi_point(double g)
{
    PhysicalParams p;
    p.omega = 1.0;
    p.Omega = 1.5;
    p.g = g;
    p.gamma = 0.1;
    p.temperature = 0.1;
    return p;
}

PhysicalParams dispersive_point()
{
    PhysicalParams p;
    p.omega = 1.0;
    p.Omega = 4.0;
    p.g = 0.5;
    p.gamma = 0.15;
    p.temperature = 1.563;
    return p;
}

}  // namespace

static void BM_LindbladRhs(benchmark::State& state)
{
    const int N = static_cast<int>(state.range(0));
    const LindbladSystem sys(Model::Rabi, rabi_point(0.1), N);
    const auto rho = product_state(QubitMatrix::excited(), thermal_boson(derive(rabi_point(0.1)).nbar, N));
    for (auto _ : state) benchmark::DoNotOptimize(sys.rhs(rho));
    state.SetComplexityN(N);
}
BENCHMARK(BM_LindbladRhs)->Arg(4)->Arg(8)->Arg(15)->Arg(32);

static void BM_EvolveDopri5(benchmark::State& state)
{
    const int N = static_cast<int>(state.range(0));
    const auto p = rabi_point(0.1);
    const auto rho = product_state(QubitMatrix::excited(), thermal_boson(derive(p).nbar, N));
    const std::vector<double> ts{0.0, 20.0};
    long steps = 0;
    for (auto _ : state) {
        const auto tr = evolve(rho, ts, Model::Rabi, p);
        steps = tr.stats.accepted;
        benchmark::DoNotOptimize(tr.states.back());
    }
    state.counters["steps"] = static_cast<double>(steps);
}
BENCHMARK(BM_EvolveDopri5)->Arg(8)->Arg(15)->Unit(benchmark::kMillisecond);

static void BM_JcKernels(benchmark::State& state)
{
    const auto p = dispersive_point();
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(jc_kernels(t, p, QubitMatrix::plus()));
        t += 0.01;
    }
}
BENCHMARK(BM_JcKernels);

static void BM_DispersiveThermalSeries(benchmark::State& state)
{
    const auto p = dispersive_point();
    std::vector<double> ts(static_cast<size_t>(state.range(0)));
    for (size_t k = 0; k < ts.size(); ++k) ts[k] = 0.1 * static_cast<double>(k);
    for (auto _ : state) benchmark::DoNotOptimize(evolve_thermal(ts, p, QubitMatrix::plus()));
}
BENCHMARK(BM_DispersiveThermalSeries)->Arg(601)->Unit(benchmark::kMillisecond);

static void BM_SecondOrderTable(benchmark::State& state)
{
    const auto p = rabi_point(0.05);
    for (auto _ : state) benchmark::DoNotOptimize(second_order_table(p, QubitMatrix::excited()));
}
BENCHMARK(BM_SecondOrderTable);

static void BM_SecondOrderCoeffs(benchmark::State& state)
{
    const auto p = rabi_point(0.05);
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(second_order_coeffs(t, p, QubitMatrix::excited()));
        t += 0.01;
    }
}
BENCHMARK(BM_SecondOrderCoeffs);

static void BM_SpectrumHermitian(benchmark::State& state)
{
    const int N = static_cast<int>(state.range(0));
    const auto L = liouvillian(Model::Rabi, rabi_point(0.1), N);
    for (auto _ : state) benchmark::DoNotOptimize(spectrum_hermitian(L, 2 * (N + 1)));
}
BENCHMARK(BM_SpectrumHermitian)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
