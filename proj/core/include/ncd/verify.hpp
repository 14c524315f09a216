#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncd/model.hpp"

namespace ncd {

enum class ViolationKind {
  Tolerance,
  Interdiction,
  NecessityWindow,
  NecessityExclusion,
  PatientOverlap,
  OperatorOverlap,
  ShiftContainment,
  WrongCareUnit,
  MissingAgendaEntry,
};

[[nodiscard]] std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::optional<PatientId> patient;
  std::optional<Day> day;
  std::vector<ServiceRef> entities;
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Care-pathway constraints at day granularity: tolerance, interdiction,
/// necessity window and necessity exclusion. Rules relate services of the
/// same patient only.
[[nodiscard]] std::vector<Violation> verify_assignment(const Instance& instance,
                                                       const DayAssignment& assignment);

/// Daily-agenda constraints of one day: care unit of the operator, shift
/// containment, no patient overlap, no operator overlap. Entries naming an
/// unknown occurrence or service raise InputError.
[[nodiscard]] std::vector<Violation> verify_agenda(const Instance& instance, const DailySchedule& schedule);

/// Everything above plus agreement between the assignment and the agendas.
/// The result is empty iff the solution is feasible; it is sorted by
/// (kind, patient, day).
[[nodiscard]] std::vector<Violation> verify_solution(const Instance& instance, const FullSolution& solution);

}  // namespace ncd
