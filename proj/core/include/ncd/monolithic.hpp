#pragma once

#include <chrono>

#include "ncd/model.hpp"
#include "ncd/report.hpp"

namespace ncd {

/// Undecomposed exact solver: one branch-and-bound over day assignments that
/// runs the agenda check of a day as soon as no undecided occurrence can
/// still land on it. No cuts, no master/subproblem loop. Same status and
/// bound semantics as lbbd_solve.
[[nodiscard]] SolveReport monolithic_solve(const Instance& instance, std::chrono::milliseconds time_budget);

/// Largest number of assignments brute_force_optimum accepts.
inline constexpr long long kBruteForceLimit = 1'000'000;

/// Exhaustive oracle: enumerates all (horizon + 1)^#occurrences assignments,
/// keeps those passing verify_assignment, and decides each used day by
/// exhaustive operator/start enumeration. Throws InputError when the count
/// exceeds kBruteForceLimit or slots_per_day exceeds 64.
[[nodiscard]] int brute_force_optimum(const Instance& instance);

}  // namespace ncd
