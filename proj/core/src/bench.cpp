#include "ncd/bench.hpp"

#include <atomic>
#include <mutex>
#include <thread>

#include "ncd/error.hpp"
#include "ncd/lbbd.hpp"
#include "ncd/monolithic.hpp"

namespace ncd {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::vector<BenchCase> bench_cases(const BenchConfig& config) {
  if (config.instances_per_cell < 0) throw InputError("bench: instances per cell must be >= 0");
  std::vector<BenchCase> cases;
  for (int p : config.patients) {
    for (int h : config.horizons) {
      for (int k = 1; k <= config.instances_per_cell; ++k) {
        BenchCase c;
        c.id = "p" + std::to_string(p) + "_h" + std::to_string(h) + "_i" + std::to_string(k);
        c.patients = p;
        c.horizon = h;
        c.params = config.base;
        c.params.patients = p;
        c.params.horizon_days = h;
        c.params.seed = mix(mix(mix(config.seed) ^ static_cast<std::uint64_t>(p)) ^ static_cast<std::uint64_t>(h)) ^
                        static_cast<std::uint64_t>(k);
        cases.push_back(std::move(c));
      }
    }
  }
  return cases;
}

BenchRow run_one(const BenchCase& bench_case, const Instance& instance, Method method,
                 std::chrono::milliseconds time_limit) {
  BenchRow row;
  row.instance = bench_case.id;
  row.patients = bench_case.patients;
  row.horizon = bench_case.horizon;
  for (const auto& o : instance.occurrences) row.services += static_cast<int>(o.services.size());
  row.method = method;

  SolveReport report;
  if (method == Method::Mono) {
    report = monolithic_solve(instance, time_limit);
  } else {
    DriverConfig cfg;
    cfg.time_budget = time_limit;
    report = lbbd_solve(instance, cfg);
  }
  row.status = report.status;
  row.objective = report.objective;
  row.upper_bound = report.upper_bound;
  row.iterations = report.iterations;
  row.cuts = static_cast<int>(report.cuts.size());
  row.master_ms = report.master_ms;
  row.sp_ms = report.sp_ms;
  row.total_ms = report.total_ms;
  return row;
}

std::vector<BenchRow> run_bench(const BenchConfig& config, const std::function<void(const BenchRow&)>& on_row) {
  if (config.jobs < 1) throw InputError("bench: jobs must be >= 1");
  if (config.time_limit.count() <= 0) throw InputError("bench: time limit must be positive");
  const auto cases = bench_cases(config);
  std::vector<Instance> instances;
  instances.reserve(cases.size());
  for (const auto& c : cases) instances.push_back(generate_instance(c.params));

  const std::size_t per_case = config.methods.size();
  const std::size_t total = cases.size() * per_case;
  std::vector<BenchRow> rows(total);
  std::atomic<std::size_t> next{0};
  std::mutex report_mutex;
  std::exception_ptr error;

  auto worker = [&] {
    for (std::size_t t = next++; t < total; t = next++) {
      try {
        const auto& c = cases[t / per_case];
        rows[t] = run_one(c, instances[t / per_case], config.methods[t % per_case], config.time_limit);
        std::lock_guard lock(report_mutex);
        if (on_row) on_row(rows[t]);
      } catch (...) {
        std::lock_guard lock(report_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };

  const int threads = std::min<int>(config.jobs, static_cast<int>(std::max<std::size_t>(total, 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return rows;
}

}  // namespace ncd
