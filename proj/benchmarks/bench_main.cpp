#include <benchmark/benchmark.h>

#include <limits>

#include "icgm/competition.hpp"
#include "icgm/environment.hpp"
#include "icgm/lpp.hpp"
#include "icgm/particles.hpp"

using namespace icgm;

namespace {

Environment env() {
  return Environment(ParameterSequence::explicit_list({1.0, 0.5}, 1.0), ParameterSequence::constant(1.0),
                     SubProbabilityMeasure::dirac(1.0), SubProbabilityMeasure::dirac(1.0), 7);
}

void BM_WeightFill(benchmark::State& st) {
  const Environment e = env();
  const Index n = st.range(0);
  for (auto _ : st) benchmark::DoNotOptimize(e.weights(Rect{{1, 1}, {n, n}}));
  st.SetItemsProcessed(st.iterations() * n * n);
}
BENCHMARK(BM_WeightFill)->Arg(100)->Arg(1000);

void BM_PassageTimes(benchmark::State& st) {
  const Index n = st.range(0);
  const WeightField w = env().weights(Rect{{1, 1}, {n, n}});
  for (auto _ : st) benchmark::DoNotOptimize(passage_times(w, {1, 1}));
  st.SetItemsProcessed(st.iterations() * n * n);
}
BENCHMARK(BM_PassageTimes)->Arg(100)->Arg(1000);

void BM_CompetitionInterface(benchmark::State& st) {
  const Environment e = env();
  for (auto _ : st) benchmark::DoNotOptimize(competition_interface(e, {1, 1}, st.range(0)));
}
BENCHMARK(BM_CompetitionInterface)->Arg(100)->Arg(500);

void BM_Tasep(benchmark::State& st) {
  const Environment e = env();
  const Index m = st.range(0);
  for (auto _ : st)
    benchmark::DoNotOptimize(simulate_tasep(e, m, std::numeric_limits<double>::infinity(), false));
  st.SetItemsProcessed(st.iterations() * m * m);
}
BENCHMARK(BM_Tasep)->Arg(50)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
