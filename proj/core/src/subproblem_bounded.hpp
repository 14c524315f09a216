#pragma once

#include <optional>
#include <span>

#include "deadline.hpp"
#include "ncd/subproblem.hpp"

namespace ncd::detail {

/// sp_solve that gives up (nullopt) once the deadline passes, so a global
/// solve budget also bounds a pathological day.
std::optional<SPOutcome> sp_solve_until(const DayDemand& demand, std::span<const OperatorShift> shifts,
                                        const Deadline& deadline);

}  // namespace ncd::detail
