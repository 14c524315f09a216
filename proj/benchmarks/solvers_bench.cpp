#include <benchmark/benchmark.h>

#include "ncd/generator.hpp"
#include "ncd/lbbd.hpp"
#include "ncd/master.hpp"
#include "ncd/monolithic.hpp"
#include "ncd/subproblem.hpp"

using namespace ncd;
using namespace std::chrono_literals;

namespace {

Instance instance(int patients, int horizon, std::uint64_t seed) {
  GenParams p;
  p.patients = patients;
  p.horizon_days = horizon;
  p.seed = seed;
  return generate_instance(p);
}

// Busiest day of the first master solution: a realistic subproblem.
DayDemand busiest_day(const Instance& inst) {
  const auto m = master_solve(inst, {}, 10s);
  DayDemand best{1, {}};
  for (Day d = 1; d <= inst.horizon_days; ++d) {
    auto demand = make_day_demand(inst, m.assignment, d);
    if (demand.items.size() > best.items.size()) best = std::move(demand);
  }
  return best;
}

void BM_SpSolve(benchmark::State& state) {
  const auto inst = instance(static_cast<int>(state.range(0)), 7, 3);
  const auto demand = busiest_day(inst);
  const auto shifts = inst.shifts_on(demand.day);
  for (auto _ : state) benchmark::DoNotOptimize(sp_solve(demand, shifts));
  state.counters["items"] = static_cast<double>(demand.items.size());
}
BENCHMARK(BM_SpSolve)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_MasterSolve(benchmark::State& state) {
  const auto inst = instance(static_cast<int>(state.range(0)), 7, 5);
  for (auto _ : state) benchmark::DoNotOptimize(master_solve(inst, {}, 60s));
}
BENCHMARK(BM_MasterSolve)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Lbbd(benchmark::State& state) {
  const auto inst = instance(static_cast<int>(state.range(0)), 7, 5);
  DriverConfig cfg;
  cfg.time_budget = 60s;
  for (auto _ : state) benchmark::DoNotOptimize(lbbd_solve(inst, cfg));
}
BENCHMARK(BM_Lbbd)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Monolithic(benchmark::State& state) {
  const auto inst = instance(static_cast<int>(state.range(0)), 7, 5);
  for (auto _ : state) benchmark::DoNotOptimize(monolithic_solve(inst, 60s));
}
BENCHMARK(BM_Monolithic)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_FigureOne(benchmark::State& state) {
  const auto inst = figure1_instance();
  DriverConfig cfg;
  cfg.time_budget = 10s;
  for (auto _ : state) benchmark::DoNotOptimize(lbbd_solve(inst, cfg));
}
BENCHMARK(BM_FigureOne)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
