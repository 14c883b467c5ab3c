// Serial reference kernels against the OpenMP versions on synthetic loads.
// Sizes bracket the realistic range: property-suite batches (~1e3) up to
// large spectrum grids (~1e6 entries).

#include <benchmark/benchmark.h>

#include <vector>

#include "conf4/kernels.hpp"
#include "conf4/random.hpp"

using namespace conf4;

namespace {

struct EigenData {
    std::vector<double> d2u, d1u, lt, ls;
    explicit EigenData(size_t n) : d2u(n), d1u(n), lt(n), ls(n) {
        Rng rng(42);
        for (size_t i = 0; i < n; ++i) {
            d2u[i] = 0.1 * rng.gaussian();
            d1u[i] = 0.1 * rng.gaussian();
        }
    }
};

void bm_schouten_reference(benchmark::State& state) {
    EigenData d(static_cast<size_t>(state.range(0)));
    for (auto _ : state) {
        kernels::reference::schouten_eigenvalues(0.3, d.d2u, d.d1u, d.lt, d.ls);
        benchmark::DoNotOptimize(d.lt.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_schouten_omp(benchmark::State& state) {
    EigenData d(static_cast<size_t>(state.range(0)));
    for (auto _ : state) {
        kernels::omp::schouten_eigenvalues(0.3, d.d2u, d.d1u, d.lt, d.ls);
        benchmark::DoNotOptimize(d.lt.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

struct BatchData {
    std::vector<SymEndo4> mats;
    std::vector<double> s1, s2;
    explicit BatchData(size_t n) : s1(n), s2(n) {
        Rng rng(7);
        mats.reserve(n);
        for (size_t i = 0; i < n; ++i) mats.push_back(rng.symmetric(1.0));
    }
};

void bm_sigma12_batch_reference(benchmark::State& state) {
    BatchData d(static_cast<size_t>(state.range(0)));
    for (auto _ : state) {
        kernels::reference::sigma12_batch(d.mats, d.s1, d.s2);
        benchmark::DoNotOptimize(d.s2.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_sigma12_batch_omp(benchmark::State& state) {
    BatchData d(static_cast<size_t>(state.range(0)));
    for (auto _ : state) {
        kernels::omp::sigma12_batch(d.mats, d.s1, d.s2);
        benchmark::DoNotOptimize(d.s2.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

struct SpectrumData {
    std::vector<double> eigs1, eigs2, out;
    explicit SpectrumData(size_t n) : out(n * n) {
        for (size_t i = 0; i < n; ++i) {
            eigs1.push_back(0.01 * static_cast<double>(i * i));
            eigs2.push_back(0.02 * static_cast<double>(i * i));
        }
    }
};

void bm_spectrum_reference(benchmark::State& state) {
    SpectrumData d(static_cast<size_t>(state.range(0)));
    for (auto _ : state) {
        kernels::reference::product_spectrum_map(0.4, -0.7, d.eigs1, d.eigs2, d.out);
        benchmark::DoNotOptimize(d.out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void bm_spectrum_omp(benchmark::State& state) {
    SpectrumData d(static_cast<size_t>(state.range(0)));
    for (auto _ : state) {
        kernels::omp::product_spectrum_map(0.4, -0.7, d.eigs1, d.eigs2, d.out);
        benchmark::DoNotOptimize(d.out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

}  // namespace

BENCHMARK(bm_schouten_reference)->Arg(1 << 10)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_schouten_omp)->Arg(1 << 10)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_sigma12_batch_reference)->Arg(1 << 10)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_sigma12_batch_omp)->Arg(1 << 10)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_spectrum_reference)->Arg(64)->Arg(512)->Arg(1024);
BENCHMARK(bm_spectrum_omp)->Arg(64)->Arg(512)->Arg(1024);

BENCHMARK_MAIN();
