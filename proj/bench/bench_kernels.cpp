// Serial reference vs OpenMP kernels, plus the end-to-end solvers that use them.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "bosegas/critical_temperature.hpp"
#include "bosegas/hartree_radial.hpp"
#include "bosegas/ideal_gas.hpp"
#include "bosegas/kernels.hpp"
#include "bosegas/sc_solver.hpp"

using namespace bosegas;

static std::vector<double> random_vec(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> x(n);
    for (auto& v : x) v = u(rng);
    return x;
}

static void BM_MatvecSerial(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    auto K = random_vec(n * n, 1), x = random_vec(n, 2);
    std::vector<double> y(n);
    for (auto _ : st) {
        kernels::matvec_serial(K.data(), x.data(), y.data(), n, n);
        benchmark::DoNotOptimize(y.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<long>(n * n));
}

static void BM_MatvecParallel(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    auto K = random_vec(n * n, 1), x = random_vec(n, 2);
    std::vector<double> y(n);
    for (auto _ : st) {
        kernels::matvec_parallel(K.data(), x.data(), y.data(), n, n);
        benchmark::DoNotOptimize(y.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<long>(n * n));
}

static void BM_DensitySerial(benchmark::State& st) {
    const std::size_t n = 2050, modes = static_cast<std::size_t>(st.range(0));
    auto u = random_vec(n * modes, 3), w = random_vec(modes, 4);
    std::vector<double> rho(n);
    for (auto _ : st) {
        kernels::accumulate_density_serial(u.data(), w.data(), modes, n, n, rho.data());
        benchmark::DoNotOptimize(rho.data());
    }
}

static void BM_DensityParallel(benchmark::State& st) {
    const std::size_t n = 2050, modes = static_cast<std::size_t>(st.range(0));
    auto u = random_vec(n * modes, 3), w = random_vec(modes, 4);
    std::vector<double> rho(n);
    for (auto _ : st) {
        kernels::accumulate_density_parallel(u.data(), w.data(), modes, n, n, rho.data());
        benchmark::DoNotOptimize(rho.data());
    }
}

static void BM_SolveSC(benchmark::State& st) {
    const Potential v = make_gaussian_potential(1.0, 1.0);
    SCOptions o;
    o.parallel = st.range(0) != 0;
    for (auto _ : st) benchmark::DoNotOptimize(solve_selfconsistent(1.5 * beta_critical(1.0), 1.0, v, 0.05, o).g);
}

static void BM_FindTc(benchmark::State& st) {
    const Potential v = make_gaussian_potential(1.0, 1.0);
    TcOptions o;
    o.parallel = st.range(0) != 0;
    for (auto _ : st) benchmark::DoNotOptimize(find_tc(0.02, 2.0, v, o).beta_c);
}

static void BM_Hartree(benchmark::State& st) {
    const Potential v = make_gaussian_potential(1.0, 1.0);
    HartreeOptions o;
    o.parallel = st.range(0) != 0;
    o.keep_vectors = false;
    for (auto _ : st) benchmark::DoNotOptimize(solve_hartree(256, 2 * beta_critical(1.0), 1.0, v, 0.05, o).N0);
}

BENCHMARK(BM_MatvecSerial)->Arg(256)->Arg(512)->Arg(1024);
BENCHMARK(BM_MatvecParallel)->Arg(256)->Arg(512)->Arg(1024);
BENCHMARK(BM_DensitySerial)->Arg(64)->Arg(512);
BENCHMARK(BM_DensityParallel)->Arg(64)->Arg(512);
BENCHMARK(BM_SolveSC)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FindTc)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Hartree)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
