#include <benchmark/benchmark.h>

#include "latgossip/conductance.hpp"
#include "latgossip/generators.hpp"

using namespace latgossip;

namespace {

void scan(benchmark::State& state, Execution execution) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const auto g = gen_random_connected(n, 0.4, 1, 64, 7);
  for (auto _ : state) {
    auto result = detail::scan_cuts(g, execution);
    benchmark::DoNotOptimize(result);
  }
  state.SetItemsProcessed(state.iterations() * ((std::int64_t{1} << (n - 1)) - 1));
}

void BM_ScanSerial(benchmark::State& state) { scan(state, Execution::serial); }
void BM_ScanParallel(benchmark::State& state) { scan(state, Execution::parallel); }

}  // namespace

BENCHMARK(BM_ScanSerial)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
