// The verifier is the reference reading of the constraints. It deliberately
// shares no code with the solvers.
#include "ncd/verify.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#include "ncd/error.hpp"

namespace ncd {

namespace {

struct ScheduledItem {
  ServiceRef ref;
  Day day;
};

std::string describe(const ServiceRef& r) {
  std::ostringstream os;
  os << "p" << r.occurrence.patient << "/pck" << r.occurrence.packet << "#" << r.occurrence.index << "/s"
     << r.service;
  return os.str();
}

void canonical_sort(std::vector<Violation>& v) {
  std::sort(v.begin(), v.end(), [](const Violation& a, const Violation& b) {
    return std::tie(a.kind, a.patient, a.day, a.entities, a.detail) <
           std::tie(b.kind, b.patient, b.day, b.entities, b.detail);
  });
}

bool overlaps(Slot s1, int d1, Slot s2, int d2) { return s1 < s2 + d2 && s2 < s1 + d1; }

}  // namespace

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Tolerance:
      return "tolerance";
    case ViolationKind::Interdiction:
      return "interdiction";
    case ViolationKind::NecessityWindow:
      return "necessity-window";
    case ViolationKind::NecessityExclusion:
      return "necessity-exclusion";
    case ViolationKind::PatientOverlap:
      return "patient-overlap";
    case ViolationKind::OperatorOverlap:
      return "operator-overlap";
    case ViolationKind::ShiftContainment:
      return "shift-containment";
    case ViolationKind::WrongCareUnit:
      return "wrong-care-unit";
    case ViolationKind::MissingAgendaEntry:
      return "missing-agenda-entry";
  }
  return "unknown";
}

std::vector<Violation> verify_assignment(const Instance& inst, const DayAssignment& assignment) {
  std::vector<Violation> out;
  std::map<PatientId, std::vector<ScheduledItem>> by_patient;

  for (const auto& occ : inst.occurrences) {
    auto it = assignment.find(occ.key());
    if (it == assignment.end() || !it->second) continue;
    const Day day = *it->second;
    if (day < 1 || day > inst.horizon_days || !within_tolerance(day, occ.ideal_date, occ.tolerance)) {
      std::ostringstream os;
      os << "day " << day << " outside window " << occ.ideal_date << "+-" << occ.tolerance << " (horizon "
         << inst.horizon_days << ")";
      out.push_back({ViolationKind::Tolerance, occ.patient, day, {}, os.str()});
    }
    for (ServiceId s : occ.services) by_patient[occ.patient].push_back({{occ.key(), s}, day});
  }

  for (const auto& [patient, items] : by_patient) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      const auto& a = items[i];
      for (std::size_t j = 0; j < items.size(); ++j) {
        if (i == j) continue;
        const auto& b = items[j];
        for (const auto& r : inst.interdictions) {
          if (r.trigger != a.ref.service || r.blocked != b.ref.service) continue;
          if (b.day >= a.day && b.day <= a.day + r.n_days) {
            std::ostringstream os;
            os << describe(a.ref) << " on day " << a.day << " interdicts " << describe(b.ref) << " on day " << b.day
               << " (n_days " << r.n_days << ")";
            out.push_back({ViolationKind::Interdiction, patient, b.day, {a.ref, b.ref}, os.str()});
          }
        }
        for (const auto& r : inst.necessities) {
          if (r.trigger != a.ref.service || r.required != b.ref.service) continue;
          if (a.day < b.day && b.day <= a.day + r.d_min) {
            std::ostringstream os;
            os << describe(b.ref) << " on day " << b.day << " falls in the exclusion window after "
               << describe(a.ref) << " on day " << a.day << " (d_min " << r.d_min << ")";
            out.push_back({ViolationKind::NecessityExclusion, patient, b.day, {a.ref, b.ref}, os.str()});
          }
        }
      }

      for (const auto& r : inst.necessities) {
        if (r.trigger != a.ref.service) continue;
        if (a.day + r.d_max > inst.horizon_days) continue;
        const bool satisfied = std::any_of(items.begin(), items.end(), [&](const ScheduledItem& b) {
          return &b != &a && b.ref.service == r.required && b.day >= a.day + r.d_min && b.day <= a.day + r.d_max;
        });
        if (!satisfied) {
          std::ostringstream os;
          os << describe(a.ref) << " on day " << a.day << " requires service " << r.required << " within ["
             << a.day + r.d_min << ", " << a.day + r.d_max << "]";
          out.push_back({ViolationKind::NecessityWindow, patient, a.day, {a.ref}, os.str()});
        }
      }
    }
  }

  canonical_sort(out);
  return out;
}

std::vector<Violation> verify_agenda(const Instance& inst, const DailySchedule& schedule) {
  std::vector<Violation> out;

  struct Placed {
    ServiceRef ref;
    CareUnitId unit;
    OperatorId op;
    Slot start;
    int duration;
  };
  std::vector<Placed> placed;

  for (const auto& [ref, entry] : schedule.entries) {
    const auto* occ = inst.find_occurrence(ref.occurrence);
    if (occ == nullptr) throw InputError("agenda for day " + std::to_string(schedule.day) +
                                         " references unknown occurrence " + describe(ref));
    if (std::find(occ->services.begin(), occ->services.end(), ref.service) == occ->services.end()) {
      throw InputError("agenda for day " + std::to_string(schedule.day) + " references service " +
                       std::to_string(ref.service.value) + " outside its packet: " + describe(ref));
    }
    const auto* svc = inst.find_service(ref.service);
    if (svc == nullptr) throw InputError("agenda references unknown service " + describe(ref));

    placed.push_back({ref, svc->care_unit, entry.op, entry.start, svc->duration});

    auto shift = std::find_if(inst.shifts.begin(), inst.shifts.end(), [&](const OperatorShift& s) {
      return s.day == schedule.day && s.care_unit == svc->care_unit && s.op == entry.op && s.duration > 0;
    });
    if (shift == inst.shifts.end()) {
      std::ostringstream os;
      os << "operator " << entry.op << " has no shift in care unit " << svc->care_unit << " on day "
         << schedule.day;
      out.push_back({ViolationKind::WrongCareUnit, ref.occurrence.patient, schedule.day, {ref}, os.str()});
      continue;
    }
    if (entry.start < shift->start || entry.start + svc->duration > shift->end()) {
      std::ostringstream os;
      os << describe(ref) << " occupies [" << entry.start << ", " << entry.start + svc->duration
         << ") outside shift [" << shift->start << ", " << shift->end() << ")";
      out.push_back({ViolationKind::ShiftContainment, ref.occurrence.patient, schedule.day, {ref}, os.str()});
    }
  }

  for (std::size_t i = 0; i < placed.size(); ++i) {
    for (std::size_t j = i + 1; j < placed.size(); ++j) {
      const auto& a = placed[i];
      const auto& b = placed[j];
      if (!overlaps(a.start, a.duration, b.start, b.duration)) continue;
      if (a.ref.occurrence.patient == b.ref.occurrence.patient) {
        out.push_back({ViolationKind::PatientOverlap, a.ref.occurrence.patient, schedule.day, {a.ref, b.ref},
                       describe(a.ref) + " overlaps " + describe(b.ref)});
      }
      if (a.unit == b.unit && a.op == b.op) {
        std::ostringstream os;
        os << "operator " << a.op << " of care unit " << a.unit << " serves " << describe(a.ref) << " and "
           << describe(b.ref) << " at overlapping times";
        out.push_back({ViolationKind::OperatorOverlap, a.ref.occurrence.patient, schedule.day, {a.ref, b.ref},
                       os.str()});
      }
    }
  }

  canonical_sort(out);
  return out;
}

std::vector<Violation> verify_solution(const Instance& inst, const FullSolution& solution) {
  std::vector<Violation> out = verify_assignment(inst, solution.assignment);

  std::map<Day, const DailySchedule*> agenda_of;
  for (const auto& agenda : solution.agendas) {
    if (!agenda_of.emplace(agenda.day, &agenda).second) {
      throw InputError("solution holds two agendas for day " + std::to_string(agenda.day));
    }
    auto daily = verify_agenda(inst, agenda);
    out.insert(out.end(), daily.begin(), daily.end());
  }

  for (const auto& occ : inst.occurrences) {
    auto it = solution.assignment.find(occ.key());
    if (it == solution.assignment.end() || !it->second) continue;
    const Day day = *it->second;
    auto agenda = agenda_of.find(day);
    for (ServiceId s : occ.services) {
      const ServiceRef ref{occ.key(), s};
      if (agenda == agenda_of.end() || !agenda->second->entries.contains(ref)) {
        out.push_back({ViolationKind::MissingAgendaEntry, occ.patient, day, {ref},
                       describe(ref) + " is scheduled on day " + std::to_string(day) + " but has no agenda entry"});
      }
    }
  }

  for (const auto& [day, agenda] : agenda_of) {
    for (const auto& [ref, entry] : agenda->entries) {
      auto it = solution.assignment.find(ref.occurrence);
      if (it == solution.assignment.end() || it->second != day) {
        out.push_back({ViolationKind::MissingAgendaEntry, ref.occurrence.patient, day, {ref},
                       describe(ref) + " has an agenda entry on day " + std::to_string(day) +
                           " but its packet is not scheduled that day"});
      }
    }
  }

  canonical_sort(out);
  return out;
}

}  // namespace ncd
