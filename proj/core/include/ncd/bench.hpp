#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ncd/generator.hpp"
#include "ncd/io.hpp"
#include "ncd/model.hpp"

namespace ncd {

struct BenchConfig {
  std::vector<int> patients{10};
  std::vector<int> horizons{30};
  int instances_per_cell = 1;
  std::chrono::milliseconds time_limit{std::chrono::hours(1)};
  std::uint64_t seed = 0;
  /// Solves run concurrently across (instance, method) pairs, never within one.
  int jobs = 1;
  std::vector<Method> methods{Method::Mono, Method::Lbbd};
  /// Template for every instance; patients, horizon_days and seed are overridden.
  GenParams base;
};

/// One benchmark instance of the sweep.
struct BenchCase {
  std::string id;
  int patients = 0;
  int horizon = 0;
  GenParams params;
};

/// The sweep's instances, cell by cell in the order of the patient and
/// horizon lists. Seeds depend only on the base seed and the case position.
[[nodiscard]] std::vector<BenchCase> bench_cases(const BenchConfig& config);

[[nodiscard]] BenchRow run_one(const BenchCase& bench_case, const Instance& instance, Method method,
                               std::chrono::milliseconds time_limit);

/// Rows ordered by case, then by method as listed in the config, regardless
/// of `jobs`. `on_row` sees each row as it completes; calls never overlap.
[[nodiscard]] std::vector<BenchRow> run_bench(const BenchConfig& config,
                                              const std::function<void(const BenchRow&)>& on_row = {});

}  // namespace ncd
