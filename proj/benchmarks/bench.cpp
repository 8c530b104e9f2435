#include "spun/equations.hpp"
#include "spun/hull.hpp"
#include "spun/surfaces.hpp"
#include "spun/tri.hpp"
#include "spun/tropical.hpp"

#include <benchmark/benchmark.h>

#include <string>

namespace {

const spun::Triangulation& whl() {
    static const auto t = spun::load_triangulation(std::string(SPUN_DATA_DIR) + "/whl.json");
    return t;
}

void BM_EnumeratePF_WL(benchmark::State& state) {
    const auto b = spun::qmatching_direct(whl());
    const auto threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(spun::enumerate_pf(b, whl().size(), threads));
}
BENCHMARK(BM_EnumeratePF_WL)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Prevariety_WL(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(spun::prevariety(whl()));
}
BENCHMARK(BM_Prevariety_WL)->Unit(benchmark::kMillisecond);

// The Q-matching cone of the Whitehead link restricted to the orthant.
void BM_ExtremeRays(benchmark::State& state) {
    auto c = spun::Cone::orthant(12);
    for (const auto& r : spun::qmatching_direct(whl())) c.equalities.push_back(spun::to_rational(r));
    for (auto _ : state) benchmark::DoNotOptimize(spun::extreme_rays(c));
}
BENCHMARK(BM_ExtremeRays)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
