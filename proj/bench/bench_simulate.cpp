#include <benchmark/benchmark.h>

#include <cmath>

#include "nearplane/montecarlo.hpp"

namespace {

nearplane::SimConfig config(nearplane::SimScheme scheme, std::int64_t trials) {
  nearplane::SimConfig c;
  c.params = {1.0, std::acos(0.3)};
  c.scheme = scheme;
  c.n1 = 5;
  c.n2 = 12;
  c.n = 16;
  c.trials = static_cast<std::uint64_t>(trials);
  c.seed = 1;
  return c;
}

template <nearplane::SimReport (*Run)(const nearplane::SimConfig&)>
void BM_Simulate(benchmark::State& state) {
  const auto scheme = static_cast<nearplane::SimScheme>(state.range(0));
  const auto c = config(scheme, state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Run(c));
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
  state.SetLabel(nearplane::to_string(scheme));
}

void Args(benchmark::internal::Benchmark* b) {
  for (int s = 0; s < 4; ++s) b->Args({s, 1 << 18});
  b->Unit(benchmark::kMillisecond)->UseRealTime();
}

}  // namespace

BENCHMARK(BM_Simulate<nearplane::simulate>)->Name("simulate/parallel")->Apply(Args);
BENCHMARK(BM_Simulate<nearplane::simulate_reference>)->Name("simulate/reference")->Apply(Args);

BENCHMARK_MAIN();
