// Serial reference vs OpenMP for the hot kernels.
#include <benchmark/benchmark.h>

#include "flagforge/certificate.hpp"
#include "flagforge/constructions.hpp"
#include "flagforge/oracle.hpp"
#include "flagforge/sdpgen.hpp"

using namespace flagforge;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) ? Execution::parallel : Execution::serial;
}

void BM_AdmissibleGraphs(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(admissible_graphs(8, 3, mode(state)));
}

void BM_Flags(benchmark::State& state) {
  const TypeSpec tau{complement(parse_graph("6:1213243545"))};
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_flags(tau, 7, 3, mode(state)));
}

void BM_SharpList(benchmark::State& state) {
  const auto co = PatternGraph::uniform(complement(clebsch_graph()));
  for (auto _ : state) benchmark::DoNotOptimize(sharp_list_from_pattern(co, 7, 3, mode(state)));
}

void BM_LegalSets(benchmark::State& state) {
  const SmallGraph f = complement(clebsch_graph());
  for (auto _ : state) benchmark::DoNotOptimize(legal_sets(f, 3, 6, mode(state)));
}

void BM_GenerateSdp(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(generate_sdp(4, 3, 6, {}, std::nullopt, mode(state)));
}

void BM_Oracle(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_f(8, 3, 3, 600, mode(state)));
}

}  // namespace

BENCHMARK(BM_AdmissibleGraphs)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Flags)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SharpList)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LegalSets)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GenerateSdp)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Oracle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
