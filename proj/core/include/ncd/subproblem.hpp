#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ncd/model.hpp"

namespace ncd {

struct DemandItem {
  ServiceRef ref;
  CareUnitId care_unit;
  int duration = 1;

  friend bool operator==(const DemandItem&, const DemandItem&) = default;
};

/// Services the master placed on one day.
struct DayDemand {
  Day day = 1;
  std::vector<DemandItem> items;
};

enum class SpStatus { Feasible, Infeasible };

struct SPOutcome {
  SpStatus status = SpStatus::Infeasible;
  DailySchedule schedule;  ///< meaningful when Feasible
  std::int64_t nodes = 0;
};

/// Items of every service of every occurrence assigned to `day`.
[[nodiscard]] DayDemand make_day_demand(const Instance& instance, const DayAssignment& assignment, Day day);

/// Exact feasibility decision for one day's agenda: each item gets one
/// operator of its care unit and one start slot such that no patient and no
/// operator does two things at once and every item fits inside its
/// operator's shift. Shifts of other days and empty shifts are ignored.
///
/// The returned schedule is the first one met by a deterministic search
/// (longest items first, lowest operator ids first, earliest starts), and
/// does not depend on the order of `demand.items`.
[[nodiscard]] SPOutcome sp_solve(const DayDemand& demand, std::span<const OperatorShift> shifts);

}  // namespace ncd
