#include "compiled.hpp"

#include <algorithm>
#include <map>

namespace ncd::detail {

int Problem::unit_index(CareUnitId id) const {
  auto it = std::lower_bound(units.begin(), units.end(), id);
  return (it != units.end() && *it == id) ? static_cast<int>(it - units.begin()) : -1;
}

int Problem::occ_index(const OccurrenceKey& key) const {
  auto it = std::lower_bound(occs.begin(), occs.end(), key,
                             [](const CompiledOccurrence& o, const OccurrenceKey& k) { return o.key < k; });
  return (it != occs.end() && it->key == key) ? static_cast<int>(it - occs.begin()) : -1;
}

namespace {

bool contains(const PacketOccurrence& o, ServiceId s) {
  return std::find(o.services.begin(), o.services.end(), s) != o.services.end();
}

void mark(std::vector<char>& forbidden, int horizon, int lo, int hi) {
  lo = std::max(lo, -horizon);
  hi = std::min(hi, horizon);
  for (int d = lo; d <= hi; ++d) forbidden[static_cast<std::size_t>(d + horizon)] = 1;
}

}  // namespace

Problem compile(const Instance& inst) {
  Problem p;
  p.instance = &inst;
  p.horizon = inst.horizon_days;
  p.units = inst.care_units;
  std::sort(p.units.begin(), p.units.end());

  p.capacity.assign(static_cast<std::size_t>(p.horizon) + 1, std::vector<int>(p.units.size(), 0));
  for (const auto& s : inst.shifts) p.capacity[s.day][p.unit_index(s.care_unit)] += s.duration;

  std::map<ServiceId, const ServiceDef*> service;
  for (const auto& s : inst.services) service[s.id] = &s;

  for (const auto& o : inst.occurrences) {
    CompiledOccurrence c;
    c.key = o.key();
    c.source = &o;
    for (Day d = std::max(1, o.ideal_date - o.tolerance); d <= std::min(p.horizon, o.ideal_date + o.tolerance); ++d) {
      c.window.push_back(d);
    }
    std::map<int, int> load;
    for (ServiceId s : o.services) load[p.unit_index(service.at(s)->care_unit)] += service.at(s)->duration;
    for (auto [u, dur] : load) c.loads.push_back({u, dur});
    p.occs.push_back(std::move(c));
  }
  std::sort(p.occs.begin(), p.occs.end(), [](const auto& a, const auto& b) { return a.key < b.key; });

  std::map<PatientId, std::vector<int>> by_patient;
  for (int i = 0; i < static_cast<int>(p.occs.size()); ++i) by_patient[p.occs[i].key.patient].push_back(i);

  const auto width = static_cast<std::size_t>(2 * p.horizon + 1);
  for (auto& [patient, members] : by_patient) {
    for (int a : members) {
      auto& oa = p.occs[a];
      const auto& sa = *oa.source;
      oa.same_patient = members;

      for (const auto& r : inst.interdictions) {
        if (r.trigger != r.blocked && contains(sa, r.trigger) && contains(sa, r.blocked)) oa.self_blocked = true;
      }

      for (int b : members) {
        if (b == a) continue;
        const auto& sb = *p.occs[b].source;
        std::vector<char> forbidden(width, 0);
        bool any = false;
        // offset = day_b - day_a
        for (const auto& r : inst.interdictions) {
          if (contains(sa, r.trigger) && contains(sb, r.blocked)) {
            mark(forbidden, p.horizon, 0, r.n_days);
            any = true;
          }
          if (contains(sb, r.trigger) && contains(sa, r.blocked)) {
            mark(forbidden, p.horizon, -r.n_days, 0);
            any = true;
          }
        }
        for (const auto& r : inst.necessities) {
          if (r.d_min >= 1 && contains(sa, r.trigger) && contains(sb, r.required)) {
            mark(forbidden, p.horizon, 1, r.d_min);
            any = true;
          }
          if (r.d_min >= 1 && contains(sb, r.trigger) && contains(sa, r.required)) {
            mark(forbidden, p.horizon, -r.d_min, -1);
            any = true;
          }
        }
        if (any) oa.conflicts.push_back({b, std::move(forbidden)});
      }

      for (ServiceId s : sa.services) {
        for (const auto& r : inst.necessities) {
          if (r.trigger != s) continue;
          NecessityReq req{r.d_min, r.d_max, r.required != s && contains(sa, r.required), {}};
          for (int b : members) {
            if (b != a && contains(*p.occs[b].source, r.required)) req.supporters.push_back(b);
          }
          auto same = std::find_if(oa.needs.begin(), oa.needs.end(), [&](const NecessityReq& n) {
            return n.d_min == req.d_min && n.d_max == req.d_max && n.self_support == req.self_support &&
                   n.supporters == req.supporters;
          });
          if (same == oa.needs.end()) oa.needs.push_back(std::move(req));
        }
      }
    }
  }
  return p;
}

}  // namespace ncd::detail
