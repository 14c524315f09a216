#pragma once

#include <cstdint>
#include <optional>

#include "ncd/generator.hpp"
#include "ncd/model.hpp"
#include "ncd/monolithic.hpp"

namespace ncd::fixtures {

// Small instances: two care units, twelve slots, short services and periods
// short enough that a week holds several occurrences of a pathway.
inline GenParams small_params(std::uint64_t seed, int patients, int horizon) {
  GenParams p;
  p.patients = patients;
  p.horizon_days = horizon;
  p.care_units = 2;
  p.capacity = {2, 8};
  p.operators = {1, 2};
  p.duration = {1, 5};
  p.max_services_per_packet = 2;
  p.care_pathways = {1, 2};
  p.slots_per_day = 12;
  p.service_catalog = 5;
  p.frequencies = {3, 5, 7};
  p.necessity_probability = 0.3;
  p.interdiction_probability = 0.3;
  p.seed = seed;
  return p;
}

inline long long assignment_count(const Instance& inst) {
  long long n = 1;
  for (std::size_t i = 0; i < inst.occurrences.size(); ++i) {
    n *= inst.horizon_days + 1;
    if (n > kBruteForceLimit) return n;
  }
  return n;
}

/// The small instance for `seed` when it is within the brute-force guard.
inline std::optional<Instance> oracle_sized(std::uint64_t seed, int max_patients = 5, int max_horizon = 7) {
  const int patients = 1 + static_cast<int>(seed % static_cast<std::uint64_t>(max_patients));
  const int horizon = 3 + static_cast<int>((seed / 5) % static_cast<std::uint64_t>(max_horizon - 2));
  Instance inst = generate_instance(small_params(seed, patients, horizon));
  if (assignment_count(inst) > kBruteForceLimit) return std::nullopt;
  return inst;
}

}  // namespace ncd::fixtures
