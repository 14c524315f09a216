#pragma once

#include <cstdint>
#include <vector>

#include "ncd/master.hpp"
#include "ncd/model.hpp"

namespace ncd {

/// One master/subproblem round of the decomposition.
struct IterationRecord {
  int iteration = 0;
  DayAssignment master_assignment;
  int master_objective = 0;
  int upper_bound = 0;
  int lower_bound = 0;
  std::vector<Day> infeasible_days;
  std::vector<int> new_gids;

  friend bool operator==(const IterationRecord&, const IterationRecord&) = default;
};

struct SolveReport {
  SolveStatus status = SolveStatus::Optimal;
  FullSolution solution;
  int objective = 0;
  int upper_bound = 0;
  std::vector<int> upper_bound_trace;
  std::vector<int> lower_bound_trace;
  std::vector<IterationRecord> trace;
  int iterations = 0;
  std::vector<NoGoodCut> cuts;
  int sp_calls = 0;

  std::int64_t master_ms = 0;
  std::int64_t sp_ms = 0;
  std::int64_t total_ms = 0;
};

/// Equality on everything except the wall-clock fields.
[[nodiscard]] bool same_result(const SolveReport& a, const SolveReport& b);

}  // namespace ncd
