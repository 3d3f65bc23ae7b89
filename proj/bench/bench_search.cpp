// search_serial against search_parallel on a few exhaustive instances.
#include <benchmark/benchmark.h>

#include "omni/constructions.hpp"
#include "omni/engine.hpp"
#include "omni/group.hpp"

using namespace omni;

namespace {

struct Case {
  LatinSquare square;
  int length;
};

Case make(int which) {
  switch (which) {
    case 0: return {cayley_table(cyclic(9)), 6};    // absent, 0.8M nodes
    case 1: return {cayley_table(cyclic(10)), 6};   // absent, 2M nodes
    case 2: return {cayley_table(cyclic(12)), 12};  // absent, 3M nodes
    default: return {cayley_table(find_group("Z2xZ6")), 7};  // absent, 35M nodes
  }
}

void BM_serial(benchmark::State& st) {
  const Case c = make(static_cast<int>(st.range(0)));
  SearchConstraints k;
  for (auto _ : st) benchmark::DoNotOptimize(search_serial(c.square, c.length, SearchBudget::unlimited(), k));
}

void BM_parallel(benchmark::State& st) {
  const Case c = make(static_cast<int>(st.range(0)));
  SearchConstraints k;
  const int jobs = static_cast<int>(st.range(1));
  for (auto _ : st) benchmark::DoNotOptimize(search_parallel(c.square, c.length, SearchBudget::unlimited(), k, jobs));
}

}  // namespace

BENCHMARK(BM_serial)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_parallel)->ArgsProduct({{0, 1, 2, 3}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
