#include <benchmark/benchmark.h>

#include "pathprog/bounds.hpp"
#include "pathprog/generator.hpp"
#include "pathprog/path_cover.hpp"
#include "pathprog/reservation.hpp"
#include "pathprog/simulator.hpp"

using namespace pathprog;

namespace {

DagTask sample(std::size_t parallelism, double p) {
  GenParams params;
  params.parallelism = parallelism;
  params.connection_probability = p;
  params.seed = 17;
  return generate(params);
}

void BM_LongestPath(benchmark::State& state) {
  const auto task = sample(static_cast<std::size_t>(state.range(0)), 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(longest_path(task));
  state.counters["vertices"] = static_cast<double>(task.size());
}
BENCHMARK(BM_LongestPath)->Arg(4)->Arg(16)->Arg(64);

void BM_PathCover(benchmark::State& state) {
  const auto task = sample(static_cast<std::size_t>(state.range(0)), 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(path_cover(task));
  state.counters["vertices"] = static_cast<double>(task.size());
}
BENCHMARK(BM_PathCover)->Arg(4)->Arg(16)->Arg(64);

void BM_Npca(benchmark::State& state) {
  const auto task = sample(16, 0.3);
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(npca(task, m));
}
BENCHMARK(BM_Npca)->Arg(2)->Arg(8)->Arg(32);

void BM_ProvisionOrdinary(benchmark::State& state) {
  const auto task = assign_deadline(sample(16, 0.2), Time(3, 2), 1);
  for (auto _ : state) benchmark::DoNotOptimize(provision_ordinary(task, task.size()));
}
BENCHMARK(BM_ProvisionOrdinary);

void BM_ProvisionOrdinaryUnbounded(benchmark::State& state) {
  const auto task = assign_deadline(sample(16, 0.2), Time(3, 2), 1);
  for (auto _ : state) benchmark::DoNotOptimize(provision_ordinary_unbounded(task));
}
BENCHMARK(BM_ProvisionOrdinaryUnbounded);

void BM_SimulateDedicated(benchmark::State& state) {
  const auto task = sample(static_cast<std::size_t>(state.range(0)), 0.3);
  const auto sel = npca(task, 4);
  const auto prio = PriorityAssignment::two_level(sel.collection);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_dedicated(task, prio, 4));
}
BENCHMARK(BM_SimulateDedicated)->Arg(4)->Arg(16);

}  // namespace
BENCHMARK_MAIN();
