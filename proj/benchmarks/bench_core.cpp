// Microbenchmarks for the hot paths: transforms, dealiased products, the
// Bony split, block norms, the exact linear flow, and one solver step.
// Grid size is the benchmark argument where it matters.
#include <benchmark/benchmark.h>

#include "lpsw/besov.hpp"
#include "lpsw/dyadic.hpp"
#include "lpsw/fft.hpp"
#include "lpsw/field.hpp"
#include "lpsw/grid.hpp"
#include "lpsw/initial_data.hpp"
#include "lpsw/paraproduct.hpp"
#include "lpsw/product.hpp"
#include "lpsw/semigroup.hpp"
#include "lpsw/solver.hpp"

using namespace lpsw;

namespace {

SpectralField sample(const PeriodicGrid& g, int ncomp, unsigned long long seed) {
    MultiscaleParams mp;
    mp.j_lo = 0;
    mp.j_hi = 2;
    mp.target = 0.05;
    mp.target_idx = BesovIndex{ncomp == 1 ? 1.0 : 0.0, 2.0, ncomp == 1 ? 1.0 : 2.0};
    mp.seed = seed;
    return multiscale_field(g, ncomp, mp);
}

void bm_fft_roundtrip(benchmark::State& state) {
    PeriodicGrid g(2, static_cast<int>(state.range(0)));
    SpectralField u = sample(g, 1, 1);
    for (auto _ : state) {
        std::vector<cplx> phys = to_physical(u);
        SpectralField back = from_physical(g, 1, phys);
        benchmark::DoNotOptimize(back.raw());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.size()));
}
BENCHMARK(bm_fft_roundtrip)->Arg(64)->Arg(128)->Arg(256);

void bm_dealiased_product(benchmark::State& state) {
    PeriodicGrid g(2, static_cast<int>(state.range(0)));
    SpectralField u = sample(g, 1, 2);
    SpectralField v = sample(g, 1, 3);
    for (auto _ : state) {
        SpectralField p = dealiased_product(u, v);
        benchmark::DoNotOptimize(p.raw());
    }
}
BENCHMARK(bm_dealiased_product)->Arg(64)->Arg(128);

void bm_bony_split(benchmark::State& state) {
    PeriodicGrid g(2, 64);
    DyadicPartition part(g);
    SpectralField u = sample(g, 1, 4);
    SpectralField v = sample(g, 1, 5);
    for (auto _ : state) {
        BonySplit s = bony_split(part, u, v);
        benchmark::DoNotOptimize(s.remainder.raw());
    }
}
BENCHMARK(bm_bony_split);

void bm_besov_norm(benchmark::State& state) {
    PeriodicGrid g(2, static_cast<int>(state.range(0)));
    DyadicPartition part(g);
    SpectralField u = sample(g, 2, 6);
    for (auto _ : state) {
        double n = besov_norm(part, u, {1.0, 2.0, 1.0});
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(bm_besov_norm)->Arg(64)->Arg(128)->Arg(256);

void bm_lame_flow(benchmark::State& state) {
    PeriodicGrid g(2, 128);
    SpectralField u = sample(g, 2, 7);
    for (auto _ : state) {
        SpectralField w = lame_flow(u, 0.01);
        benchmark::DoNotOptimize(w.raw());
    }
}
BENCHMARK(bm_lame_flow);

void bm_solver_step(benchmark::State& state) {
    PeriodicGrid g(2, static_cast<int>(state.range(0)));
    FriedrichsParams p;
    p.n_cut = g.xi_certified();
    SolverState s = initial_state(sample(g, 1, 8), sample(g, 2, 9), p);
    for (auto _ : state) {
        SolverState next = step(s, 0.002, p);
        benchmark::DoNotOptimize(next.u.raw());
    }
}
BENCHMARK(bm_solver_step)->Arg(64)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
