#pragma once

// Index-based view of an Instance used by the search engines.

#include <vector>

#include "ncd/model.hpp"

namespace ncd::detail {

struct UnitLoad {
  int unit;
  int duration;
};

/// Necessity attached to one service of an occurrence: some supporter must be
/// scheduled within [day + d_min, day + d_max] unless day + d_max > horizon.
struct NecessityReq {
  int d_min;
  int d_max;
  bool self_support;            ///< another service of the same occurrence satisfies it on day + 0
  std::vector<int> supporters;  ///< other occurrences of the patient holding the required service
};

/// Forbidden offsets between two occurrences of one patient, caused by
/// interdictions and necessity exclusions. Indexed by (day_other - day_self + horizon).
struct PairConflict {
  int other;
  std::vector<char> forbidden;
};

struct CompiledOccurrence {
  OccurrenceKey key;
  const PacketOccurrence* source = nullptr;
  std::vector<Day> window;  ///< tolerance window clipped to the horizon
  std::vector<UnitLoad> loads;
  bool self_blocked = false;  ///< two of its own services interdict each other
  std::vector<PairConflict> conflicts;
  std::vector<NecessityReq> needs;
  std::vector<int> same_patient;  ///< all occurrences of the patient, itself included
};

struct Problem {
  const Instance* instance = nullptr;
  int horizon = 0;
  std::vector<CareUnitId> units;
  std::vector<CompiledOccurrence> occs;    ///< sorted by key
  std::vector<std::vector<int>> capacity;  ///< [day][unit], day 0 unused

  [[nodiscard]] int unit_index(CareUnitId id) const;
  /// -1 when the key is not part of the instance.
  [[nodiscard]] int occ_index(const OccurrenceKey& key) const;
  [[nodiscard]] bool forbidden_offset(const PairConflict& c, Day self_day, Day other_day) const {
    return c.forbidden[static_cast<std::size_t>(other_day - self_day + horizon)] != 0;
  }
};

/// Requires a valid instance.
[[nodiscard]] Problem compile(const Instance& instance);

}  // namespace ncd::detail
