#include <gtest/gtest.h>

#include <map>
#include <set>

#include "ncd/error.hpp"
#include "ncd/generator.hpp"
#include "ncd/master.hpp"
#include "ncd/monolithic.hpp"
#include "ncd/subproblem.hpp"

using namespace ncd;

namespace {

int period_of(const PacketOccurrence& o) {
  switch (o.tolerance) {
    case 3: return 7;
    case 6: return 14;
    case 14: return 30;
  }
  ADD_FAILURE() << "unexpected tolerance " << o.tolerance;
  return 0;
}

GenParams params(int patients, int horizon, std::uint64_t seed) {
  GenParams p;
  p.patients = patients;
  p.horizon_days = horizon;
  p.seed = seed;
  return p;
}

}  // namespace

TEST(Rng, BoundedAndReproducible) {
  Rng a(123);
  Rng b(123);
  for (int i = 0; i < 1000; ++i) {
    const int x = a.uniform(-3, 9);
    EXPECT_EQ(x, b.uniform(-3, 9));
    EXPECT_GE(x, -3);
    EXPECT_LE(x, 9);
    const double u = a.unit();
    EXPECT_EQ(u, b.unit());
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
  EXPECT_THROW((void)a.uniform(2, 1), InputError);
}

TEST(Rng, KnownFirstOutputs) {
  // mt19937_64 is fully specified by the standard: the 10000th output of the
  // default-seeded engine is 9981545732273789042.
  std::mt19937_64 reference;
  reference.discard(9999);
  EXPECT_EQ(reference(), 9981545732273789042ULL);
  Rng rng(5489);
  std::mt19937_64 same(5489);
  EXPECT_EQ(rng.next(), same());
}

TEST(GenerateInstance, SameSeedSameInstance) {
  EXPECT_EQ(generate_instance(params(10, 30, 42)), generate_instance(params(10, 30, 42)));
  EXPECT_NE(generate_instance(params(10, 30, 42)), generate_instance(params(10, 30, 43)));
}

TEST(GenerateInstance, ParameterRangesHold) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto inst = generate_instance(params(10, 30, seed));
    EXPECT_NO_THROW(validate(inst));
    for (const auto& s : inst.services) {
      EXPECT_GE(s.duration, 6);
      EXPECT_LE(s.duration, 15);
    }
    std::map<std::pair<Day, CareUnitId>, int> capacity;
    std::map<std::pair<Day, CareUnitId>, int> operators;
    for (const auto& s : inst.shifts) {
      capacity[{s.day, s.care_unit}] += s.duration;
      ++operators[{s.day, s.care_unit}];
    }
    EXPECT_EQ(capacity.size(), 30u * 5u);
    for (const auto& [key, c] : capacity) {
      EXPECT_GE(c, 24);
      EXPECT_LE(c, 60);
      EXPECT_GE(operators[key], 1);
      EXPECT_LE(operators[key], 4);
    }
    for (const auto& o : inst.occurrences) {
      EXPECT_GE(o.services.size(), 1u);
      EXPECT_LE(o.services.size(), 4u);
    }
  }
}

TEST(GenerateInstance, WeeklyPatternRepeats) {
  const auto inst = generate_instance(params(3, 21, 9));
  std::map<Day, std::vector<OperatorShift>> by_day;
  for (auto s : inst.shifts) {
    const Day d = s.day;
    s.day = 0;
    by_day[d].push_back(s);
  }
  for (Day d = 8; d <= 21; ++d) EXPECT_EQ(by_day[d], by_day[d - 7]) << "day " << d;
}

TEST(GenerateInstance, PeriodicOccurrences) {
  const auto inst = generate_instance(params(20, 60, 4));
  std::map<std::pair<PatientId, PacketId>, std::vector<const PacketOccurrence*>> packets;
  for (const auto& o : inst.occurrences) packets[{o.patient, o.packet}].push_back(&o);
  for (const auto& [key, occs] : packets) {
    const int f = period_of(*occs.front());
    EXPECT_GE(occs.front()->ideal_date, 1);
    EXPECT_LE(occs.front()->ideal_date, f);
    for (std::size_t i = 0; i < occs.size(); ++i) {
      EXPECT_EQ(occs[i]->index, static_cast<int>(i) + 1);
      EXPECT_EQ(occs[i]->services, occs.front()->services);
      if (i > 0) EXPECT_EQ(occs[i]->ideal_date - occs[i - 1]->ideal_date, f);
    }
    EXPECT_GT(occs.back()->ideal_date + f, 60);
  }
}

TEST(GenerateInstance, RulesNeverPairServicesOfOnePacket) {
  int rules = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto p = params(20, 30, seed);
    p.necessity_probability = 0.5;
    p.interdiction_probability = 0.5;
    const auto inst = generate_instance(p);
    std::set<std::pair<ServiceId, ServiceId>> together;
    std::map<ServiceId, int> longest_period;
    for (const auto& o : inst.occurrences) {
      for (ServiceId a : o.services) {
        for (ServiceId b : o.services) together.emplace(a, b);
        longest_period[a] = std::max(longest_period[a], period_of(o));
      }
    }
    for (const auto& r : inst.interdictions) {
      EXPECT_NE(r.trigger, r.blocked);
      EXPECT_FALSE(together.contains({r.trigger, r.blocked}));
      EXPECT_GE(r.n_days, 1);
      EXPECT_LE(r.n_days, 3);
      ++rules;
    }
    for (const auto& r : inst.necessities) {
      EXPECT_NE(r.trigger, r.required);
      EXPECT_FALSE(together.contains({r.trigger, r.required}));
      EXPECT_LE(r.d_min, r.d_max);
      EXPECT_LE(r.d_min, 2);
      EXPECT_LT(r.d_max, longest_period[r.required]) << "window longer than one period";
      ++rules;
    }
  }
  EXPECT_GT(rules, 50);
}

TEST(GenerateInstance, CarePathwayCountsFollowInverseLaw) {
  auto p = params(10000, 30, 77);
  p.necessity_probability = 0;
  p.interdiction_probability = 0;
  const auto inst = generate_instance(p);
  std::map<PatientId, std::set<PacketId>> packets;
  for (const auto& o : inst.occurrences) packets[o.patient].insert(o.packet);
  ASSERT_EQ(packets.size(), 10000u);  // every pathway has an occurrence within 30 days
  std::map<int, int> histogram;
  for (const auto& [patient, set] : packets) ++histogram[static_cast<int>(set.size())];
  const double norm = 1.0 + 1.0 / 2 + 1.0 / 3 + 1.0 / 4;
  for (int k = 1; k <= 4; ++k) {
    const double expected = (1.0 / k) / norm;
    EXPECT_NEAR(histogram[k] / 10000.0, expected, 0.02) << "k=" << k;
  }
}

TEST(GenerateInstance, NoPatientsMeansNothingToSchedule) {
  const auto inst = generate_instance(params(0, 10, 1));
  EXPECT_TRUE(inst.occurrences.empty());
  EXPECT_EQ(brute_force_optimum(inst), 0);
}

TEST(GenerateInstance, InvalidParams) {
  auto bad = [](auto mutate) {
    auto p = params(5, 10, 1);
    mutate(p);
    EXPECT_THROW((void)generate_instance(p), InputError);
  };
  bad([](GenParams& p) { p.patients = -1; });
  bad([](GenParams& p) { p.horizon_days = 0; });
  bad([](GenParams& p) { p.care_units = 0; });
  bad([](GenParams& p) { p.capacity = {30, 20}; });
  bad([](GenParams& p) { p.operators = {0, 2}; });
  bad([](GenParams& p) { p.duration = {0, 3}; });
  bad([](GenParams& p) { p.care_pathways = {2, 1}; });
  bad([](GenParams& p) { p.frequencies.clear(); });
  bad([](GenParams& p) { p.necessity_probability = 1.5; });
  bad([](GenParams& p) { p.slots_per_day = 40; });  // a lone operator could need 60 slots
}

TEST(FigureOne, StatedProperties) {
  const auto inst = figure1_instance();
  EXPECT_NO_THROW(validate(inst));
  const OccurrenceKey p1{PatientId(1), PacketId(1), 1};
  const OccurrenceKey p2{PatientId(2), PacketId(2), 1};

  std::map<Day, int> red;
  for (const auto& s : inst.shifts) {
    if (s.care_unit == CareUnitId(1)) red[s.day] += s.duration;
  }
  EXPECT_EQ(red, (std::map<Day, int>{{1, 4}, {2, 3}, {3, 2}}));

  EXPECT_FALSE(capacity_ok(inst, {{p1, 3}, {p2, 3}}));
  const DayAssignment both_day1{{p1, 1}, {p2, 1}};
  EXPECT_EQ(sp_solve(make_day_demand(inst, both_day1, 1), inst.shifts_on(1)).status, SpStatus::Infeasible);
  const DayAssignment p2_alone{{p2, 1}};
  EXPECT_EQ(sp_solve(make_day_demand(inst, p2_alone, 1), inst.shifts_on(1)).status, SpStatus::Feasible);
  const DayAssignment p1_day3{{p1, 3}};
  EXPECT_EQ(sp_solve(make_day_demand(inst, p1_day3, 3), inst.shifts_on(3)).status, SpStatus::Feasible);
  EXPECT_EQ(brute_force_optimum(inst), 2);
}
