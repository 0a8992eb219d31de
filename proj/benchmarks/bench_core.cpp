#include <benchmark/benchmark.h>

#include "weil_atlas/ideal.hpp"
#include "weil_atlas/lattice.hpp"
#include "weil_atlas/oracle.hpp"
#include "weil_atlas/ptype.hpp"
#include "weil_atlas/weil.hpp"

namespace wa = weil_atlas;

namespace {

void BM_BuildField(benchmark::State &state)
{
    const auto r = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(wa::build_field(r));
}
BENCHMARK(BM_BuildField)->Arg(5)->Arg(13)->Arg(17)->Unit(benchmark::kMicrosecond);

void BM_PrimesAbove(benchmark::State &state)
{
    auto field = wa::build_field(17);
    for (auto _ : state)
        benchmark::DoNotOptimize(wa::primes_above(field, 103));
}
BENCHMARK(BM_PrimesAbove)->Unit(benchmark::kMillisecond);

void BM_FindGenerator(benchmark::State &state)
{
    auto field = wa::build_field(17);
    auto fiber = wa::primes_above(field, 103);
    auto hp = wa::enumerate_Hp(fiber);
    for (auto _ : state)
        benchmark::DoNotOptimize(wa::find_generator(hp[0].ideal, field));
}
BENCHMARK(BM_FindGenerator)->Unit(benchmark::kMillisecond);

void BM_EnumerateHp(benchmark::State &state)
{
    auto field = wa::build_field(17);
    auto fiber = wa::primes_above(field, 103);
    for (auto _ : state)
        benchmark::DoNotOptimize(wa::enumerate_Hp(fiber));
}
BENCHMARK(BM_EnumerateHp)->Unit(benchmark::kMillisecond)->Iterations(2);

void BM_LllTraceGram(benchmark::State &state)
{
    auto field = wa::build_field(17);
    for (auto _ : state)
        benchmark::DoNotOptimize(wa::lll_reduce_gram(field->trace_gram()));
}
BENCHMARK(BM_LllTraceGram)->Unit(benchmark::kMicrosecond);

void BM_ClassifyAll(benchmark::State &state)
{
    const auto r = static_cast<std::uint64_t>(state.range(0));
    const auto p = static_cast<std::uint64_t>(state.range(1));
    wa::RunConfig config;
    for (auto _ : state)
        benchmark::DoNotOptimize(wa::classify_all(r, p, config));
}
BENCHMARK(BM_ClassifyAll)->Args({3, 7})->Args({5, 11})->Args({13, 3})->Unit(benchmark::kMillisecond);

void BM_JacobiSum(benchmark::State &state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(wa::jacobi_sum(103, 17, 1));
}
BENCHMARK(BM_JacobiSum)->Unit(benchmark::kMicrosecond);

void BM_PointCount(benchmark::State &state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(wa::point_count(17, 103, 2));
}
BENCHMARK(BM_PointCount)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
