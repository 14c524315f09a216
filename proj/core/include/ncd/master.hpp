#pragma once

#include <chrono>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "ncd/model.hpp"

namespace ncd {

/// Feasibility cut returned by an infeasible day: the whole `group` may not
/// share `day` again. Any proper subset still may.
struct NoGoodCut {
  Day day = 1;
  std::vector<OccurrenceKey> group;  ///< sorted, nonempty
  int gid = 0;

  friend bool operator==(const NoGoodCut&, const NoGoodCut&) = default;
};

/// Cuts accumulated across master re-solves. Gids are strictly increasing
/// and a (day, group) pair is stored at most once.
class CutPool {
 public:
  /// Returns false (and stores nothing) when the same (day, group) is already
  /// present. Throws InputError on an empty group or a non-increasing gid.
  bool add(NoGoodCut cut);

  [[nodiscard]] bool contains(Day day, const std::vector<OccurrenceKey>& group) const;
  [[nodiscard]] const std::vector<NoGoodCut>& cuts() const { return cuts_; }
  [[nodiscard]] std::size_t size() const { return cuts_.size(); }
  [[nodiscard]] bool empty() const { return cuts_.empty(); }
  [[nodiscard]] int last_gid() const { return cuts_.empty() ? 0 : cuts_.back().gid; }

 private:
  std::vector<NoGoodCut> cuts_;
  std::set<std::pair<Day, std::vector<OccurrenceKey>>> seen_;
};

struct MasterOutcome {
  SolveStatus status = SolveStatus::Optimal;
  DayAssignment assignment;
  int objective = 0;
  int upper_bound = 0;
  std::int64_t nodes = 0;
};

/// True iff every member of the cut's group is assigned exactly the cut's day.
[[nodiscard]] bool cut_blocks(const NoGoodCut& cut, const DayAssignment& assignment);

/// Aggregate relaxation of the daily agendas: on every day, for every care
/// unit, total scheduled service duration <= total shift duration.
[[nodiscard]] bool capacity_ok(const Instance& instance, const DayAssignment& assignment);

/// Exact master problem: maximise the number of scheduled occurrences subject
/// to tolerance windows, interdictions, necessities, capacity_ok and every
/// cut of the pool. Among optimal assignments the lexicographically smallest
/// (by occurrence key, unscheduled ranked after every day) is returned. On
/// budget exhaustion the status is TimeLimit and the incumbent, possibly all
/// unscheduled, is returned with a valid upper bound.
[[nodiscard]] MasterOutcome master_solve(const Instance& instance, const CutPool& pool,
                                         std::chrono::milliseconds time_budget);

}  // namespace ncd
