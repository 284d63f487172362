#include <benchmark/benchmark.h>

#include "flagspec/flag_ring.hpp"
#include "support/test_support.hpp"

using namespace flagspec;
using namespace flagspec::testing;

namespace {

void BM_smith_normal_form(benchmark::State& state) {
    Rng rng(1);
    std::size_t n = static_cast<std::size_t>(state.range(0));
    IntegerMatrix a = random_matrix(rng, n, n, 20);
    for (auto _ : state) {
        SmithDecomposition s = smith_normal_form(a);
        benchmark::DoNotOptimize(s.d);
    }
}
BENCHMARK(BM_smith_normal_form)->Arg(8)->Arg(12)->Arg(16);

void BM_cofiber_and_first_page(benchmark::State& state) {
    Rng rng(2);
    CubeOfComplexes cube = random_cube(rng, 2, 0, 3, 3, 3);
    for (auto _ : state) {
        BoundedComplex c = cofiber(cube);
        SpectralSequencePage page = e1_page(cube);
        benchmark::DoNotOptimize(c);
        benchmark::DoNotOptimize(page);
    }
}
BENCHMARK(BM_cofiber_and_first_page);

void BM_convergence_m2(benchmark::State& state) {
    Rng rng(3);
    CubeOfComplexes cube = random_cube(rng, 2, 0, 3, 3, 3);
    for (auto _ : state) {
        ConvergenceReport r = e_infinity_compare(cube);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_convergence_m2);

void BM_weyl_enumerate_a3(benchmark::State& state) {
    RootDatum rd = build_root_datum(DynkinType::A, 3, LatticeKind::simply_connected);
    for (auto _ : state) {
        auto w = weyl_enumerate(rd);
        benchmark::DoNotOptimize(w);
    }
}
BENCHMARK(BM_weyl_enumerate_a3);

void BM_chow_flag_ring_g2(benchmark::State& state) {
    RootDatum rd = build_root_datum(DynkinType::G, 2, LatticeKind::simply_connected);
    for (auto _ : state) {
        ChowFlagRing r = chow_flag_ring(rd);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_chow_flag_ring_g2);

void BM_k0_flag_ring_a2(benchmark::State& state) {
    RootDatum rd = build_root_datum(DynkinType::A, 2, LatticeKind::simply_connected);
    for (auto _ : state) {
        K0FlagRing r = k0_flag_ring(rd);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_k0_flag_ring_a2);

}  // namespace

BENCHMARK_MAIN();
