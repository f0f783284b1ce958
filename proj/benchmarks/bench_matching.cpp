#include <benchmark/benchmark.h>

#include "smartson/matching.hpp"
#include "smartson/rng.hpp"

namespace {

smartson::ResourceSpec sample(std::uint64_t i) {
    smartson::SplitMix64 rng(i);
    smartson::ResourceSpec r;
    r.title = "bench";
    r.price = smartson::Money::from_base_units(1 + rng.below(300'000'000'000'000'000ULL));
    r.mips = double(1 + rng.below(400'000));
    r.storage_price = double(rng.below(500)) / 1000.0;
    r.ram_gb = double(1 + rng.below(64));
    r.bandwidth_mbps = double(1 + rng.below(120));
    r.cpu_cores = double(1 + rng.below(8));
    return r;
}

void BM_cosine_similarity(benchmark::State& state) {
    const auto a = sample(1);
    const auto b = sample(2);
    for (auto _ : state) benchmark::DoNotOptimize(smartson::cosine_similarity(a, b));
}
BENCHMARK(BM_cosine_similarity);

void BM_best_match(benchmark::State& state) {
    std::vector<smartson::ResourceSpec> entries;
    for (std::int64_t i = 0; i < state.range(0); ++i) entries.push_back(sample(10 + std::uint64_t(i)));
    const smartson::Catalogue catalogue(entries);
    const auto request = sample(3);
    for (auto _ : state) benchmark::DoNotOptimize(smartson::best_match(request, catalogue));
}
BENCHMARK(BM_best_match)->Arg(5)->Arg(34);

}  // namespace
