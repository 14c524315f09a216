#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>

#include "ncd/master.hpp"
#include "ncd/model.hpp"
#include "ncd/report.hpp"

namespace ncd {

struct DriverConfig {
  std::chrono::milliseconds time_budget{std::chrono::hours(1)};
  /// Solve the days of one iteration concurrently. Results are merged in
  /// ascending day order, so cuts and gids do not depend on this flag.
  bool parallel_subproblems = false;
  /// Recorded for reproducibility only; the solver is deterministic.
  std::uint64_t seed = 0;
  /// Receives one line per iteration when set.
  std::ostream* diagnostics = nullptr;
};

/// The cut for an infeasible day: every occurrence the assignment placed on
/// `day`. Throws InputError when the day is empty.
[[nodiscard]] NoGoodCut compute_nogood(Day day, const DayAssignment& assignment, int gid);

/// Logic-based Benders loop. Solves the master, checks each used day with
/// the subproblem solver and feeds one no-good per infeasible day back into
/// a persistent cut pool until every day is feasible (Optimal) or the budget
/// runs out (TimeLimit, with the best verified incumbent found so far).
[[nodiscard]] SolveReport lbbd_solve(const Instance& instance, const DriverConfig& config);

}  // namespace ncd
