#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "ncd/error.hpp"
#include "ncd/generator.hpp"
#include "ncd/subproblem.hpp"
#include "ncd/verify.hpp"

using namespace ncd;

namespace {

struct RandomDay {
  Instance inst;  // one occurrence per item, so verify_agenda can check the result
  DayDemand demand;
};

RandomDay random_day(Rng& rng, int max_items, int slots) {
  RandomDay r;
  r.inst.horizon_days = 1;
  r.inst.slots_per_day = slots;
  r.inst.care_units = {CareUnitId(1), CareUnitId(2)};
  for (int u = 1; u <= 2; ++u) {
    const int ops = rng.uniform(1, 3);
    for (int o = 1; o <= ops; ++o) {
      const int dur = rng.uniform(0, slots);
      r.inst.shifts.push_back({1, CareUnitId(u), OperatorId(o), rng.uniform(0, slots - dur), dur});
    }
  }
  const int items = rng.uniform(1, max_items);
  r.demand.day = 1;
  for (int i = 1; i <= items; ++i) {
    const CareUnitId unit(rng.uniform(1, 2));
    const int duration = rng.uniform(1, 5);
    const PatientId patient(rng.uniform(1, 2));
    r.inst.services.push_back({ServiceId(i), unit, duration});
    r.inst.occurrences.push_back({patient, PacketId(i), 1, 1, 0, {ServiceId(i)}});
    r.demand.items.push_back({{{patient, PacketId(i), 1}, ServiceId(i)}, unit, duration});
  }
  return r;
}

// Tries every (operator, start) for every item; only partial placements that
// already clash are cut off.
class Exhaustive {
 public:
  Exhaustive(const DayDemand& d, const std::vector<OperatorShift>& shifts) : demand_(d), shifts_(shifts) {}

  bool feasible() { return place(0); }

 private:
  struct Placed {
    PatientId patient;
    CareUnitId unit;
    OperatorId op;
    int begin;
    int end;
  };

  bool place(std::size_t i) {
    if (i == demand_.items.size()) return true;
    const auto& item = demand_.items[i];
    for (const auto& s : shifts_) {
      if (s.care_unit != item.care_unit) continue;
      for (int t = s.start; t + item.duration <= s.end(); ++t) {
        bool clash = false;
        for (const auto& p : placed_) {
          const bool overlap = p.begin < t + item.duration && t < p.end;
          const bool same_op = p.unit == s.care_unit && p.op == s.op;
          if (overlap && (same_op || p.patient == item.ref.occurrence.patient)) clash = true;
        }
        if (clash) continue;
        placed_.push_back({item.ref.occurrence.patient, s.care_unit, s.op, t, t + item.duration});
        const bool ok = place(i + 1);
        placed_.pop_back();
        if (ok) return true;
      }
    }
    return false;
  }

  const DayDemand& demand_;
  const std::vector<OperatorShift>& shifts_;
  std::vector<Placed> placed_;
};

}  // namespace

TEST(SpSolve, EmptyDemandIsFeasible) {
  const auto out = sp_solve({4, {}}, {});
  EXPECT_EQ(out.status, SpStatus::Feasible);
  EXPECT_TRUE(out.schedule.entries.empty());
  EXPECT_EQ(out.schedule.day, 4);
}

TEST(SpSolve, SingleServiceStartsAtTheShiftStart) {
  const ServiceRef ref{{PatientId(1), PacketId(1), 1}, ServiceId(1)};
  const DayDemand demand{1, {{ref, CareUnitId(1), 6}}};
  const std::vector<OperatorShift> shifts{{1, CareUnitId(1), OperatorId(1), 0, 10}};
  const auto out = sp_solve(demand, shifts);
  ASSERT_EQ(out.status, SpStatus::Feasible);
  EXPECT_EQ(out.schedule.entries.at(ref), (AgendaEntry{OperatorId(1), 0}));
}

TEST(SpSolve, CareUnitWithoutShiftTimeIsInfeasible) {
  const ServiceRef ref{{PatientId(1), PacketId(1), 1}, ServiceId(1)};
  const DayDemand demand{1, {{ref, CareUnitId(2), 1}}};
  const std::vector<OperatorShift> shifts{{1, CareUnitId(1), OperatorId(1), 0, 10},
                                          {1, CareUnitId(2), OperatorId(1), 0, 0}};
  EXPECT_EQ(sp_solve(demand, shifts).status, SpStatus::Infeasible);
}

TEST(SpSolve, IgnoresShiftsOfOtherDays) {
  const ServiceRef ref{{PatientId(1), PacketId(1), 1}, ServiceId(1)};
  const DayDemand demand{2, {{ref, CareUnitId(1), 3}}};
  const std::vector<OperatorShift> shifts{{1, CareUnitId(1), OperatorId(1), 0, 10}};
  EXPECT_EQ(sp_solve(demand, shifts).status, SpStatus::Infeasible);
}

TEST(SpSolve, NonPositiveDurationIsAnInputError) {
  const ServiceRef ref{{PatientId(1), PacketId(1), 1}, ServiceId(1)};
  const DayDemand demand{1, {{ref, CareUnitId(1), 0}}};
  EXPECT_THROW((void)sp_solve(demand, {}), InputError);
}

TEST(SpSolve, FigureOneDayOneWithBothPackets) {
  const auto inst = figure1_instance();
  const DayAssignment both{{{PatientId(1), PacketId(1), 1}, 1}, {{PatientId(2), PacketId(2), 1}, 1}};
  const auto shifts = inst.shifts_on(1);
  EXPECT_EQ(sp_solve(make_day_demand(inst, both, 1), shifts).status, SpStatus::Infeasible);
}

TEST(SpSolve, EarliestStartLeavesRoomForLaterItems) {
  // A long item placed first at its earliest start would block the short one;
  // an exact search still finds the order short-then-long.
  const PatientId p(1);
  const ServiceRef a{{p, PacketId(1), 1}, ServiceId(1)};
  const ServiceRef b{{p, PacketId(2), 1}, ServiceId(2)};
  const DayDemand demand{1, {{a, CareUnitId(1), 3}, {b, CareUnitId(2), 2}}};
  const std::vector<OperatorShift> shifts{{1, CareUnitId(1), OperatorId(1), 0, 6},
                                          {1, CareUnitId(2), OperatorId(1), 0, 2}};
  const auto out = sp_solve(demand, shifts);
  ASSERT_EQ(out.status, SpStatus::Feasible);
  EXPECT_EQ(out.schedule.entries.at(b).start, 0);
  EXPECT_GE(out.schedule.entries.at(a).start, 2);
}

TEST(SpSolve, AgreesWithExhaustiveEnumeration) {
  Rng rng(2024);
  int feasible = 0;
  int infeasible = 0;
  for (int n = 0; n < 3000; ++n) {
    const auto day = random_day(rng, 4, rng.uniform(4, 12));
    const auto shifts = day.inst.shifts_on(1);
    const bool expected = Exhaustive(day.demand, shifts).feasible();
    const auto out = sp_solve(day.demand, day.inst.shifts);
    ASSERT_EQ(out.status == SpStatus::Feasible, expected) << "case " << n;
    if (expected) {
      ++feasible;
      EXPECT_EQ(out.schedule.entries.size(), day.demand.items.size());
      EXPECT_TRUE(verify_agenda(day.inst, out.schedule).empty()) << "case " << n;
    } else {
      ++infeasible;
    }
  }
  // Both outcomes must be well represented for the comparison to mean anything.
  EXPECT_GT(feasible, 300);
  EXPECT_GT(infeasible, 300);
}

TEST(SpSolve, ResultDoesNotDependOnItemOrder) {
  Rng rng(99);
  for (int n = 0; n < 500; ++n) {
    auto day = random_day(rng, 6, 12);
    const auto reference = sp_solve(day.demand, day.inst.shifts);
    for (int k = 0; k < 3; ++k) {
      auto& items = day.demand.items;
      for (std::size_t i = items.size(); i > 1; --i) {
        std::swap(items[i - 1], items[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(i) - 1))]);
      }
      const auto again = sp_solve(day.demand, day.inst.shifts);
      EXPECT_EQ(again.status, reference.status);
      EXPECT_EQ(again.schedule, reference.schedule);
    }
  }
}

TEST(SpSolve, FeasibleDaysRespectTheAggregateCapacity) {
  Rng rng(5);
  for (int n = 0; n < 1000; ++n) {
    const auto day = random_day(rng, 6, 12);
    if (sp_solve(day.demand, day.inst.shifts).status != SpStatus::Feasible) continue;
    std::map<CareUnitId, int> load;
    std::map<CareUnitId, int> supply;
    for (const auto& it : day.demand.items) load[it.care_unit] += it.duration;
    for (const auto& s : day.inst.shifts) supply[s.care_unit] += s.duration;
    for (const auto& [unit, l] : load) EXPECT_LE(l, supply[unit]);
  }
}
