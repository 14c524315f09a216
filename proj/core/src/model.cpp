#include "ncd/model.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>
#include <tuple>

#include "ncd/error.hpp"

namespace ncd {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw InputError("invalid instance: " + field + ": " + message);
}

std::string at(std::string_view array, std::size_t i) {
  std::ostringstream os;
  os << array << '[' << i << ']';
  return os.str();
}

}  // namespace

const ServiceDef* Instance::find_service(ServiceId id) const {
  auto it = std::find_if(services.begin(), services.end(), [&](const auto& s) { return s.id == id; });
  return it == services.end() ? nullptr : &*it;
}

const PacketOccurrence* Instance::find_occurrence(const OccurrenceKey& key) const {
  auto it = std::find_if(occurrences.begin(), occurrences.end(),
                         [&](const auto& o) { return o.key() == key; });
  return it == occurrences.end() ? nullptr : &*it;
}

std::vector<OperatorShift> Instance::shifts_on(Day day) const {
  std::vector<OperatorShift> out;
  for (const auto& s : shifts) {
    if (s.day == day && s.duration > 0) out.push_back(s);
  }
  return out;
}

void validate(const Instance& inst) {
  if (inst.horizon_days < 1) fail("horizon_days", "must be positive");
  if (inst.slots_per_day < 1) fail("slots_per_day", "must be positive");

  std::set<CareUnitId> units;
  for (std::size_t i = 0; i < inst.care_units.size(); ++i) {
    if (!units.insert(inst.care_units[i]).second) fail(at("care_units", i), "duplicate care unit");
  }

  std::set<ServiceId> services;
  for (std::size_t i = 0; i < inst.services.size(); ++i) {
    const auto& s = inst.services[i];
    if (!services.insert(s.id).second) fail(at("services", i) + ".id", "duplicate service id");
    if (s.duration < 1) fail(at("services", i) + ".duration", "must be >= 1");
    if (!units.contains(s.care_unit)) fail(at("services", i) + ".care_unit", "unknown care unit");
  }

  std::set<std::tuple<Day, CareUnitId, OperatorId>> shift_keys;
  for (std::size_t i = 0; i < inst.shifts.size(); ++i) {
    const auto& s = inst.shifts[i];
    const auto field = at("shifts", i);
    if (s.day < 1 || s.day > inst.horizon_days) fail(field + ".day", "outside the horizon");
    if (!units.contains(s.care_unit)) fail(field + ".care_unit", "unknown care unit");
    if (s.start < 0) fail(field + ".start", "must be >= 0");
    if (s.duration < 0) fail(field + ".duration", "must be >= 0");
    if (s.end() > inst.slots_per_day) fail(field + ".duration", "shift ends after slots_per_day");
    if (!shift_keys.emplace(s.day, s.care_unit, s.op).second) {
      fail(field, "second shift for the same (day, care_unit, operator)");
    }
  }

  std::set<OccurrenceKey> keys;
  for (std::size_t i = 0; i < inst.occurrences.size(); ++i) {
    const auto& o = inst.occurrences[i];
    const auto field = at("occurrences", i);
    if (!keys.insert(o.key()).second) fail(field, "duplicate (patient, packet, index)");
    if (o.ideal_date < 1 || o.ideal_date > inst.horizon_days) fail(field + ".ideal_date", "outside the horizon");
    if (o.tolerance < 0) fail(field + ".tolerance", "must be >= 0");
    if (o.services.empty()) fail(field + ".services", "must be nonempty");
    std::set<ServiceId> seen;
    for (std::size_t j = 0; j < o.services.size(); ++j) {
      if (!services.contains(o.services[j])) fail(field + ".services[" + std::to_string(j) + "]", "unknown service");
      if (!seen.insert(o.services[j]).second) fail(field + ".services[" + std::to_string(j) + "]", "duplicate service");
    }
  }

  // Consecutive occurrences of one packet must have disjoint tolerance windows.
  std::map<std::pair<PatientId, PacketId>, std::vector<const PacketOccurrence*>> by_packet;
  for (const auto& o : inst.occurrences) by_packet[{o.patient, o.packet}].push_back(&o);
  for (auto& [packet, occs] : by_packet) {
    std::sort(occs.begin(), occs.end(), [](auto* a, auto* b) { return a->ideal_date < b->ideal_date; });
    for (std::size_t j = 1; j < occs.size(); ++j) {
      if (occs[j - 1]->ideal_date + occs[j - 1]->tolerance >= occs[j]->ideal_date - occs[j]->tolerance) {
        std::ostringstream os;
        os << "occurrences of patient " << packet.first << " packet " << packet.second;
        fail(os.str(), "tolerance windows of consecutive occurrences overlap");
      }
    }
  }

  for (std::size_t i = 0; i < inst.interdictions.size(); ++i) {
    const auto& r = inst.interdictions[i];
    const auto field = at("interdictions", i);
    if (!services.contains(r.trigger)) fail(field + ".trigger", "unknown service");
    if (!services.contains(r.blocked)) fail(field + ".blocked", "unknown service");
    if (r.n_days < 0) fail(field + ".n_days", "must be >= 0");
  }
  for (std::size_t i = 0; i < inst.necessities.size(); ++i) {
    const auto& r = inst.necessities[i];
    const auto field = at("necessities", i);
    if (!services.contains(r.trigger)) fail(field + ".trigger", "unknown service");
    if (!services.contains(r.required)) fail(field + ".required", "unknown service");
    if (r.d_min < 0) fail(field + ".d_min", "must be >= 0");
    if (r.d_max < r.d_min) fail(field + ".d_max", "must be >= d_min");
  }
}

DayAssignment all_unscheduled(const Instance& instance) {
  DayAssignment out;
  for (const auto& o : instance.occurrences) out.emplace(o.key(), std::nullopt);
  return out;
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal:
      return "optimal";
    case SolveStatus::TimeLimit:
      return "timelimit";
  }
  return "unknown";
}

bool within_tolerance(Day day, Day ideal_date, int tolerance) {
  return std::abs(day - ideal_date) <= tolerance;
}

int objective_value(const Instance& instance, const DayAssignment& assignment) {
  int count = 0;
  for (const auto& [key, day] : assignment) {
    if (instance.find_occurrence(key) == nullptr) {
      std::ostringstream os;
      os << "assignment references unknown occurrence (patient " << key.patient << ", packet "
         << key.packet << ", index " << key.index << ")";
      throw InputError(os.str());
    }
    if (day.has_value()) ++count;
  }
  return count;
}

}  // namespace ncd
