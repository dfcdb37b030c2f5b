#include <benchmark/benchmark.h>

#include <random>

#include "ellperc/events.hpp"
#include "ellperc/geometry.hpp"
#include "ellperc/sampling.hpp"

using namespace ellperc;

namespace {

std::vector<Grain> random_grains(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> c(-5, 5), r(1, 6), v(-1.5, 1.5);
    std::vector<Grain> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(make_ellipse({c(eng), c(eng)}, r(eng), v(eng)));
    return out;
}

void BM_GrainGrain(benchmark::State& state) {
    const auto g = random_grains(1024, 1);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(grain_grain_intersects(g[i % 1024], g[(i * 7 + 3) % 1024]));
        ++i;
    }
}
BENCHMARK(BM_GrainGrain);

void BM_TripleCommonPoint(benchmark::State& state) {
    const auto g = random_grains(1024, 2);
    const Box box = make_box(4.0, 2.0);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(triple_common_point(g[i % 1024], g[(i * 5 + 1) % 1024], box));
        ++i;
    }
}
BENCHMARK(BM_TripleCommonPoint);

void BM_SampleHitProcess(benchmark::State& state) {
    const double l = static_cast<double>(state.range(0));
    const HitProcessSampler sampler(make_box(l, 1.0), {0.3, AxisLaw::pareto(2.0), GrainKind::ellipse});
    std::uint64_t r = 0;
    for (auto _ : state) {
        Rng rng = make_stream(9, {r++});
        benchmark::DoNotOptimize(sampler.sample(rng));
    }
}
BENCHMARK(BM_SampleHitProcess)->Arg(8)->Arg(32)->Arg(128);

void BM_CoveredCrossing(benchmark::State& state) {
    const double l = static_cast<double>(state.range(0));
    const Box box = make_box(l, 1.0);
    Rng rng = make_stream(5, {});
    const auto grains = sample_hitting_grains(box, {0.3, AxisLaw::pareto(2.0), GrainKind::ellipse}, rng);
    for (auto _ : state) benchmark::DoNotOptimize(covered_crossing(grains, box, Axis::horizontal));
    state.counters["grains"] = static_cast<double>(grains.size());
}
BENCHMARK(BM_CoveredCrossing)->Arg(8)->Arg(32)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
