#include "ncd/generator.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "ncd/error.hpp"

namespace ncd {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError("GenParams." + what);
}

void require_range(IntRange r, int min_lo, const std::string& name) {
  require(r.lo <= r.hi, name + ": empty range [" + std::to_string(r.lo) + ", " + std::to_string(r.hi) + "]");
  require(r.lo >= min_lo, name + ".lo must be >= " + std::to_string(min_lo));
}

struct CarePathway {
  PacketId packet;
  int frequency;
  std::vector<ServiceId> services;
};

}  // namespace

void validate(const GenParams& p) {
  require(p.patients >= 0, "patients must be >= 0");
  require(p.horizon_days >= 1, "horizon_days must be >= 1");
  require(p.care_units >= 1, "care_units must be >= 1");
  require(p.slots_per_day >= 1, "slots_per_day must be >= 1");
  require(p.service_catalog >= 1, "service_catalog must be >= 1");
  require(p.max_services_per_packet >= 1, "max_services_per_packet must be >= 1");
  require_range(p.capacity, 0, "capacity");
  require_range(p.operators, 1, "operators");
  require_range(p.duration, 1, "duration");
  require_range(p.care_pathways, 1, "care_pathways");
  require(!p.frequencies.empty(), "frequencies must not be empty");
  for (int f : p.frequencies) require(f >= 1, "frequencies entries must be >= 1");
  require(p.necessity_probability >= 0 && p.necessity_probability <= 1, "necessity_probability must lie in [0, 1]");
  require(p.interdiction_probability >= 0 && p.interdiction_probability <= 1,
          "interdiction_probability must lie in [0, 1]");
  const int widest_shift = (p.capacity.hi + p.operators.lo - 1) / p.operators.lo;
  require(widest_shift <= p.slots_per_day, "capacity.hi / operators.lo exceeds slots_per_day");
}

int Rng::uniform(int lo, int hi) {
  if (lo > hi) throw InputError("Rng::uniform: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo) + 1;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return static_cast<int>(lo + static_cast<std::int64_t>(x % span));
}

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

Instance generate_instance(const GenParams& p) {
  validate(p);
  Rng rng(p.seed);
  Instance inst;
  inst.horizon_days = p.horizon_days;
  inst.slots_per_day = p.slots_per_day;

  for (int c = 1; c <= p.care_units; ++c) inst.care_units.emplace_back(c);
  for (int s = 1; s <= p.service_catalog; ++s) {
    inst.services.push_back({ServiceId(s), CareUnitId(rng.uniform(1, p.care_units)), rng.uniform(p.duration)});
  }

  // One week of shifts, replicated over the horizon.
  std::vector<OperatorShift> week;
  for (int weekday = 1; weekday <= 7; ++weekday) {
    for (int c = 1; c <= p.care_units; ++c) {
      const int capacity = rng.uniform(p.capacity);
      const int ops = rng.uniform(p.operators);
      for (int o = 1; o <= ops; ++o) {
        const int dur = capacity / ops + (o <= capacity % ops ? 1 : 0);
        const int start = rng.uniform(0, p.slots_per_day - dur);
        week.push_back({weekday, CareUnitId(c), OperatorId(o), start, dur});
      }
    }
  }
  for (Day d = 1; d <= p.horizon_days; ++d) {
    for (const auto& s : week) {
      if (s.day != (d - 1) % 7 + 1) continue;
      auto shift = s;
      shift.day = d;
      inst.shifts.push_back(shift);
    }
  }

  // Care-pathway count k with P(k) proportional to 1/k.
  double norm = 0;
  for (int k = p.care_pathways.lo; k <= p.care_pathways.hi; ++k) norm += 1.0 / k;

  std::map<PatientId, std::vector<CarePathway>> pathways;
  std::set<std::pair<ServiceId, ServiceId>> co_packet;
  for (int pat = 1; pat <= p.patients; ++pat) {
    const PatientId patient(pat);
    double u = rng.unit() * norm;
    int k = p.care_pathways.hi;
    for (int j = p.care_pathways.lo; j <= p.care_pathways.hi; ++j) {
      u -= 1.0 / j;
      if (u < 0) {
        k = j;
        break;
      }
    }

    auto& mine = pathways[patient];
    for (int cp = 1; cp <= k; ++cp) {
      const int f = p.frequencies[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(p.frequencies.size()) - 1))];
      const int phase = rng.uniform(1, f);
      const int count = rng.uniform(1, std::min(p.max_services_per_packet, p.service_catalog));
      std::vector<int> catalog(static_cast<std::size_t>(p.service_catalog));
      for (int s = 0; s < p.service_catalog; ++s) catalog[static_cast<std::size_t>(s)] = s + 1;
      std::vector<ServiceId> services;
      for (int i = 0; i < count; ++i) {
        const int j = rng.uniform(i, p.service_catalog - 1);
        std::swap(catalog[static_cast<std::size_t>(i)], catalog[static_cast<std::size_t>(j)]);
        services.emplace_back(catalog[static_cast<std::size_t>(i)]);
      }
      std::sort(services.begin(), services.end());
      for (ServiceId a : services) {
        for (ServiceId b : services) co_packet.emplace(a, b);
      }

      const PacketId packet(cp);
      int index = 1;
      for (Day ideal = phase; ideal <= p.horizon_days; ideal += f) {
        inst.occurrences.push_back({patient, packet, index++, ideal, (f - 1) / 2, services});
      }
      mine.push_back({packet, f, std::move(services)});
    }
  }

  // Rules between services that some patient receives through different
  // pathways and that never share a packet anywhere.
  std::map<std::pair<ServiceId, ServiceId>, int> eligible;  // -> frequency of the second service's pathway
  for (const auto& [patient, cps] : pathways) {
    for (const auto& a : cps) {
      for (const auto& b : cps) {
        if (a.packet == b.packet) continue;
        for (ServiceId sa : a.services) {
          for (ServiceId sb : b.services) {
            if (sa == sb || co_packet.contains({sa, sb})) continue;
            auto [it, inserted] = eligible.emplace(std::pair{sa, sb}, b.frequency);
            if (!inserted) it->second = std::min(it->second, b.frequency);
          }
        }
      }
    }
  }
  for (const auto& [pair, frequency] : eligible) {
    if (rng.bernoulli(p.interdiction_probability)) {
      inst.interdictions.push_back({pair.first, pair.second, rng.uniform(1, 3)});
    }
    if (rng.bernoulli(p.necessity_probability)) {
      const int d_min = rng.uniform(0, 2);
      const int d_max = rng.uniform(d_min, std::max(d_min, frequency - 1));
      inst.necessities.push_back({pair.first, pair.second, d_min, d_max});
    }
  }
  return inst;
}

Instance figure1_instance() {
  const CareUnitId red(1);
  const CareUnitId blue(2);
  Instance inst;
  inst.horizon_days = 3;
  inst.slots_per_day = 4;
  inst.care_units = {red, blue};
  inst.services = {
      {ServiceId(1), red, 2},
      {ServiceId(2), blue, 1},
      {ServiceId(3), red, 1},
  };
  inst.shifts = {
      {1, red, OperatorId(1), 0, 2},  {1, red, OperatorId(2), 0, 2},  {2, red, OperatorId(1), 0, 2},
      {2, red, OperatorId(2), 0, 1},  {3, red, OperatorId(1), 0, 2},  {1, blue, OperatorId(1), 0, 2},
      {2, blue, OperatorId(1), 0, 2}, {3, blue, OperatorId(1), 2, 2},
  };
  inst.occurrences = {
      {PatientId(1), PacketId(1), 1, 2, 1, {ServiceId(1), ServiceId(2)}},
      {PatientId(2), PacketId(2), 1, 2, 1, {ServiceId(3)}},
  };
  return inst;
}

}  // namespace ncd
