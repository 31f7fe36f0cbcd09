#include "opthy/causal/discovery.hpp"
#include "opthy/causal/faithfulness.hpp"
#include "opthy/causal/scenarios.hpp"
#include "opthy/models.hpp"

#include <benchmark/benchmark.h>

using namespace opthy;

namespace {

const CausalScenario& classical_scenario() {
  static const CausalScenario sc = scenario_of(classical_model());
  return sc;
}

const CiSet& classical_observed() {
  static const CiSet obs = generic_observed(classical_scenario());
  return obs;
}

void BM_MinimalDagsSerial(benchmark::State& state) {
  const auto& sc = classical_scenario();
  for (auto _ : state) benchmark::DoNotOptimize(minimal_dags_serial(classical_observed(), sc.required, sc.space));
}

void BM_MinimalDagsParallel(benchmark::State& state) {
  const auto& sc = classical_scenario();
  for (auto _ : state) benchmark::DoNotOptimize(minimal_dags(classical_observed(), sc.required, sc.space));
}

void BM_ProbeSerial(benchmark::State& state) {
  const auto& sc = classical_scenario();
  for (auto _ : state) {
    benchmark::DoNotOptimize(faithfulness_probe_serial(sc.factorization, sc.space, sc.reference,
                                                       static_cast<std::size_t>(state.range(0)), 1));
  }
}

void BM_ProbeParallel(benchmark::State& state) {
  const auto& sc = classical_scenario();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        faithfulness_probe(sc.factorization, sc.space, sc.reference, static_cast<std::size_t>(state.range(0)), 1));
  }
}

}  // namespace

BENCHMARK(BM_MinimalDagsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinimalDagsParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProbeSerial)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProbeParallel)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
