#include <benchmark/benchmark.h>

#include <random>

#include "oapoly/anova.hpp"
#include "oapoly/dims.hpp"
#include "oapoly/groups.hpp"
#include "oapoly/ild.hpp"
#include "oapoly/oracle.hpp"
#include "oapoly/repr.hpp"

using namespace oapoly;

namespace {

FrequencyVector random_counts(const OAParams& p, unsigned seed) {
    std::mt19937 rng(seed);
    FrequencyVector fv{p, std::vector<long long>(static_cast<std::size_t>(p.cell_count_ll()), 0)};
    for (auto& c : fv.counts) c = static_cast<long long>(rng() % 4);
    return fv;
}

void BM_AnovaTransform_3_4(benchmark::State& state) {
    const FrequencyVector fv = random_counts(OAParams::make(3, 4, 0, 1), 1u);
    for (auto _ : state) benchmark::DoNotOptimize(anova_transform(fv));
}
BENCHMARK(BM_AnovaTransform_3_4);

void BM_SignedTransform_2_12(benchmark::State& state) {
    const FrequencyVector fv = random_counts(OAParams::make(2, 12, 0, 1), 2u);
    for (auto _ : state) benchmark::DoNotOptimize(signed_j_transform(fv));
}
BENCHMARK(BM_SignedTransform_2_12);

void BM_Enumerate_Latin3(benchmark::State& state) {
    const OAParams p = OAParams::make(3, 3, 2, 1);
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_all(p));
}
BENCHMARK(BM_Enumerate_Latin3);

void BM_SystemRank_2_4_2(benchmark::State& state) {
    const LinearSystem sys = build_ild_J(OAParams::make(2, 4, 2, 1));
    for (auto _ : state) benchmark::DoNotOptimize(system_rank(sys));
}
BENCHMARK(BM_SystemRank_2_4_2);

void BM_BuildUProjectors_2_5(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(build_U_projectors(2, 5));
}
BENCHMARK(BM_BuildUProjectors_2_5);

void BM_Burnside_Giso_3_3(benchmark::State& state) {
    const GeneratorSet gens = giso_generators(3, 3);
    for (auto _ : state) benchmark::DoNotOptimize(burnside_orbit_count(gens, 2));
}
BENCHMARK(BM_Burnside_Giso_3_3);

}  // namespace

BENCHMARK_MAIN();
