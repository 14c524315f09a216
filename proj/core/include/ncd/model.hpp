#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "ncd/ids.hpp"

namespace ncd {

struct ServiceDef {
  ServiceId id;
  CareUnitId care_unit;
  int duration = 1;  ///< in slots, >= 1

  friend bool operator==(const ServiceDef&, const ServiceDef&) = default;
};

/// One operator's working shift on one day. A zero duration means the
/// operator is absent that day.
struct OperatorShift {
  Day day = 1;
  CareUnitId care_unit;
  OperatorId op;
  Slot start = 0;
  int duration = 0;

  [[nodiscard]] Slot end() const { return start + duration; }
  friend bool operator==(const OperatorShift&, const OperatorShift&) = default;
};

struct OccurrenceKey {
  PatientId patient;
  PacketId packet;
  int index = 1;

  friend auto operator<=>(const OccurrenceKey&, const OccurrenceKey&) = default;
};

/// One periodic repetition of a packet: all its services go on the same day,
/// which must lie within `tolerance` days of `ideal_date`.
struct PacketOccurrence {
  PatientId patient;
  PacketId packet;
  int index = 1;
  Day ideal_date = 1;
  int tolerance = 0;
  std::vector<ServiceId> services;

  [[nodiscard]] OccurrenceKey key() const { return {patient, packet, index}; }
  friend bool operator==(const PacketOccurrence&, const PacketOccurrence&) = default;
};

/// Once `trigger` is delivered on day d, `blocked` may not be delivered to the
/// same patient on any day in [d, d + n_days].
struct InterdictionRule {
  ServiceId trigger;
  ServiceId blocked;
  int n_days = 0;

  friend bool operator==(const InterdictionRule&, const InterdictionRule&) = default;
};

/// Once `trigger` is delivered on day d, `required` must be delivered to the
/// same patient on some day in [d + d_min, d + d_max] (waived when
/// d + d_max exceeds the horizon) and on no day in (d, d + d_min].
struct NecessityRule {
  ServiceId trigger;
  ServiceId required;
  int d_min = 0;
  int d_max = 0;

  friend bool operator==(const NecessityRule&, const NecessityRule&) = default;
};

struct Instance {
  int horizon_days = 1;
  int slots_per_day = 1;
  std::vector<ServiceDef> services;
  std::vector<CareUnitId> care_units;
  std::vector<OperatorShift> shifts;
  std::vector<PacketOccurrence> occurrences;
  std::vector<InterdictionRule> interdictions;
  std::vector<NecessityRule> necessities;

  [[nodiscard]] const ServiceDef* find_service(ServiceId id) const;
  [[nodiscard]] const PacketOccurrence* find_occurrence(const OccurrenceKey& key) const;
  /// Shifts of `day` with a positive duration.
  [[nodiscard]] std::vector<OperatorShift> shifts_on(Day day) const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Throws InputError naming the first broken invariant.
void validate(const Instance& instance);

/// Master decision: every occurrence maps to a day or to std::nullopt
/// (unscheduled).
using DayAssignment = std::map<OccurrenceKey, std::optional<Day>>;

[[nodiscard]] DayAssignment all_unscheduled(const Instance& instance);

/// One demanded service on a day: service `service` of occurrence `occurrence`.
struct ServiceRef {
  OccurrenceKey occurrence;
  ServiceId service;

  friend auto operator<=>(const ServiceRef&, const ServiceRef&) = default;
};

struct AgendaEntry {
  OperatorId op;
  Slot start = 0;

  friend bool operator==(const AgendaEntry&, const AgendaEntry&) = default;
};

struct DailySchedule {
  Day day = 1;
  std::map<ServiceRef, AgendaEntry> entries;

  friend bool operator==(const DailySchedule&, const DailySchedule&) = default;
};

struct FullSolution {
  DayAssignment assignment;
  std::vector<DailySchedule> agendas;  ///< ascending by day, one per non-empty day

  friend bool operator==(const FullSolution&, const FullSolution&) = default;
};

enum class SolveStatus { Optimal, TimeLimit };

[[nodiscard]] std::string_view to_string(SolveStatus status);

[[nodiscard]] bool within_tolerance(Day day, Day ideal_date, int tolerance);

/// Number of scheduled occurrences. Keys absent from the instance raise
/// InputError; occurrences absent from the assignment count as unscheduled.
[[nodiscard]] int objective_value(const Instance& instance, const DayAssignment& assignment);

}  // namespace ncd
