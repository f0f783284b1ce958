#include <benchmark/benchmark.h>

#include "smartson/scenario.hpp"

#ifndef SMARTSON_SOURCE_DIR
#error "SMARTSON_SOURCE_DIR must be defined by the build"
#endif

namespace {

void BM_ten_epoch_scenario(benchmark::State& state) {
    const auto config = smartson::ScenarioConfig::from_json_file(
        std::string(SMARTSON_SOURCE_DIR) + "/fixtures/table4.json");
    for (auto _ : state) benchmark::DoNotOptimize(smartson::run_scenario(config));
}
BENCHMARK(BM_ten_epoch_scenario)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
