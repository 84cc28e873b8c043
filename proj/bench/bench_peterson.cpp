// Recursion engine benchmarks: the shell engine (OpenMP over each shell's
// candidate list, pruned to root-plus-simple successors) against the serial
// reference (every cone vector of each height, no pruning).  The reference
// is kept honest-but-slow on purpose; rank 10 makes its composition
// enumeration explode, so its depths are much shallower there.
//
// The threads argument maps to PetersonOptions::threads (0 = library
// default).  On a single-core host the sweep collapses to overhead noise;
// run on a multi-core box to see the per-shell scaling.

#include <benchmark/benchmark.h>

#include "hyperroot/cartan.hpp"
#include "hyperroot/multiplicity.hpp"

using namespace hyperroot;

static void BM_ShellEngine(benchmark::State& state, const char* preset_name) {
    GCM g = preset(preset_name);
    PetersonOptions opt;  // cache_dir empty: no disk traffic in the loop
    opt.threads = static_cast<int>(state.range(1));
    const long long H = state.range(0);
    std::size_t roots = 0;
    for (auto _ : state) {
        PetersonEngine e(g, opt);
        e.extend_to(H);
        roots = e.table().entries.size();
        benchmark::DoNotOptimize(roots);
    }
    state.counters["roots"] = static_cast<double>(roots);
}
BENCHMARK_CAPTURE(BM_ShellEngine, F, "F")
    ->ArgNames({"height", "threads"})
    ->Args({16, 0})
    ->Args({32, 0})
    ->Args({48, 0})
    ->Args({64, 0})
    ->Args({64, 1})
    ->Args({64, 2})
    ->Args({64, 4})
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ShellEngine, E10, "E10")
    ->ArgNames({"height", "threads"})
    ->Args({16, 0})
    ->Args({24, 0})
    ->Args({32, 0})
    ->Args({32, 1})
    ->Args({32, 2})
    ->Args({32, 4})
    ->Unit(benchmark::kMillisecond);

static void BM_SerialReference(benchmark::State& state, const char* preset_name) {
    GCM g = preset(preset_name);
    const long long H = state.range(0);
    std::size_t roots = 0;
    for (auto _ : state) {
        PetersonReference r(g);
        r.extend_to(H);
        roots = r.mults().size();
        benchmark::DoNotOptimize(roots);
    }
    state.counters["roots"] = static_cast<double>(roots);
}
BENCHMARK_CAPTURE(BM_SerialReference, F, "F")
    ->ArgName("height")
    ->Arg(16)
    ->Arg(32)
    ->Arg(48)
    ->Arg(64)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SerialReference, E10, "E10")
    ->ArgName("height")
    ->Arg(8)
    ->Arg(10)
    ->Arg(12)
    ->Unit(benchmark::kMillisecond);

// The closed-form engine pays for Weyl-sum enumeration plus the divisor sum
// on every call; quadratic-ish in the target height, no table to amortize.
static void BM_ClosedForm(benchmark::State& state) {
    GCM g = preset("F");
    const long long k = state.range(0);
    RootVector alpha{k, k, k / 2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(mult_berman_moody(g, alpha));
    }
}
BENCHMARK(BM_ClosedForm)->ArgName("k")->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
