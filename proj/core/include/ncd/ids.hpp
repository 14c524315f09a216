#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>

namespace ncd {

/// Integer identifier tagged with the entity kind it names, so a patient id
/// cannot be passed where a service id is expected.
template <class Tag>
struct Id {
  int value = 0;

  constexpr Id() = default;
  constexpr explicit Id(int v) : value(v) {}

  friend constexpr auto operator<=>(const Id&, const Id&) = default;
  friend std::ostream& operator<<(std::ostream& os, Id id) { return os << id.value; }
};

struct PatientTag {};
struct PacketTag {};
struct ServiceTag {};
struct CareUnitTag {};
struct OperatorTag {};

using PatientId = Id<PatientTag>;
using PacketId = Id<PacketTag>;
using ServiceId = Id<ServiceTag>;
using CareUnitId = Id<CareUnitTag>;
using OperatorId = Id<OperatorTag>;

/// Days are numbered 1..horizon_days.
using Day = int;
/// Start slots are numbered 0..slots_per_day-1.
using Slot = int;

}  // namespace ncd

template <class Tag>
struct std::hash<ncd::Id<Tag>> {
  std::size_t operator()(ncd::Id<Tag> id) const noexcept { return std::hash<int>{}(id.value); }
};
