// Serial schedule generation with chronological restriction: an item is
// placed at its earliest feasible start not before the previous placement,
// and equal starts are taken in canonical item order. Every feasible day
// has a left-shifted schedule reachable this way, so the search is exact.
#include "ncd/subproblem.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <tuple>

#include "ncd/error.hpp"
#include "subproblem_bounded.hpp"

namespace ncd {

namespace {

struct Interval {
  Slot begin;
  Slot end;
};

struct Operator {
  CareUnitId unit;
  OperatorId id;
  Slot start;
  Slot end;
  std::vector<Interval> busy;
};

struct Item {
  DemandItem demand;
  int patient;
  std::vector<int> ops;  ///< candidate operators, ascending id
};

class DaySearch {
 public:
  DaySearch(const DayDemand& demand, std::span<const OperatorShift> shifts, const detail::Deadline* deadline)
      : deadline_(deadline) {
    for (const auto& s : shifts) {
      if (s.day == demand.day && s.duration > 0) ops_.push_back({s.care_unit, s.op, s.start, s.end(), {}});
    }
    std::sort(ops_.begin(), ops_.end(),
              [](const Operator& a, const Operator& b) { return std::tie(a.unit, a.id) < std::tie(b.unit, b.id); });

    std::vector<DemandItem> sorted = demand.items;
    for (const auto& it : sorted) {
      if (it.duration < 1) throw InputError("sp_solve: demanded item with non-positive duration");
    }
    std::sort(sorted.begin(), sorted.end(), [](const DemandItem& a, const DemandItem& b) {
      return a.duration != b.duration ? a.duration > b.duration : a.ref < b.ref;
    });

    std::map<PatientId, int> patient_index;
    for (const auto& d : sorted) {
      auto [pos, inserted] = patient_index.emplace(d.ref.occurrence.patient, static_cast<int>(patient_index.size()));
      Item item{d, pos->second, {}};
      for (int o = 0; o < static_cast<int>(ops_.size()); ++o) {
        if (ops_[o].unit == d.care_unit && ops_[o].end - ops_[o].start >= d.duration) item.ops.push_back(o);
      }
      items_.push_back(std::move(item));
    }
    patient_busy_.resize(patient_index.size());
    start_.assign(items_.size(), -1);
    op_of_.assign(items_.size(), -1);
  }

  std::optional<SPOutcome> run(Day day) {
    SPOutcome out;
    out.schedule.day = day;
    if (!aggregate_fits()) {
      out.status = SpStatus::Infeasible;
      return out;
    }
    const bool found = dfs(0, -1, 0);
    if (aborted_) return std::nullopt;
    out.nodes = nodes_;
    if (!found) {
      out.status = SpStatus::Infeasible;
      return out;
    }
    out.status = SpStatus::Feasible;
    for (std::size_t i = 0; i < items_.size(); ++i) {
      out.schedule.entries.emplace(items_[i].demand.ref, AgendaEntry{ops_[op_of_[i]].id, start_[i]});
    }
    return out;
  }

 private:
  static bool clashes(const std::vector<Interval>& busy, Slot t, int d, Slot& next) {
    for (const auto& iv : busy) {
      if (iv.begin < t + d && t < iv.end) {
        next = iv.end;
        return true;
      }
    }
    return false;
  }

  std::optional<Slot> earliest_start(const Item& item, const Operator& op, Slot from) const {
    const int d = item.demand.duration;
    Slot t = std::max(from, op.start);
    while (t + d <= op.end) {
      Slot next = t;
      if (clashes(op.busy, t, d, next) || clashes(patient_busy_[item.patient], t, d, next)) {
        t = next;
        continue;
      }
      return t;
    }
    return std::nullopt;
  }

  bool aggregate_fits() const {
    std::map<CareUnitId, long> demand;
    std::map<CareUnitId, long> supply;
    for (const auto& it : items_) {
      if (it.ops.empty()) return false;
      demand[it.demand.care_unit] += it.demand.duration;
    }
    for (const auto& op : ops_) supply[op.unit] += op.end - op.start;
    return std::all_of(demand.begin(), demand.end(), [&](const auto& e) { return e.second <= supply[e.first]; });
  }

  static long free_time(const std::vector<Interval>& busy, Slot from, Slot to) {
    if (to <= from) return 0;
    long free = to - from;
    for (const auto& iv : busy) free -= std::max(0, std::min(iv.end, to) - std::max(iv.begin, from));
    return free;
  }

  // Necessary conditions for completing the current partial schedule.
  bool completable(Slot last_start) const {
    std::map<CareUnitId, long> unit_demand;
    std::vector<long> patient_demand(patient_busy_.size(), 0);
    std::vector<Slot> patient_horizon(patient_busy_.size(), last_start);
    for (std::size_t i = 0; i < items_.size(); ++i) {
      if (start_[i] >= 0) continue;
      const auto& item = items_[i];
      bool placeable = false;
      for (int o : item.ops) {
        if (earliest_start(item, ops_[o], last_start)) {
          placeable = true;
          patient_horizon[item.patient] = std::max(patient_horizon[item.patient], ops_[o].end);
        }
      }
      if (!placeable) return false;
      unit_demand[item.demand.care_unit] += item.demand.duration;
      patient_demand[item.patient] += item.demand.duration;
    }
    for (const auto& [unit, need] : unit_demand) {
      long supply = 0;
      for (const auto& op : ops_) {
        if (op.unit == unit) supply += free_time(op.busy, std::max(last_start, op.start), op.end);
      }
      if (need > supply) return false;
    }
    for (std::size_t p = 0; p < patient_busy_.size(); ++p) {
      if (patient_demand[p] > free_time(patient_busy_[p], last_start, patient_horizon[p])) return false;
    }
    return true;
  }

  // An empty operator is interchangeable with a lower-id empty operator of the
  // same care unit holding the identical shift.
  bool dominated(const Item& item, int o) const {
    const auto& op = ops_[o];
    if (!op.busy.empty()) return false;
    for (int q : item.ops) {
      if (q == o) break;
      const auto& other = ops_[q];
      if (other.busy.empty() && other.start == op.start && other.end == op.end) return true;
    }
    return false;
  }

  bool dfs(std::size_t placed, int last_index, Slot last_start) {
    if (placed == items_.size()) return true;
    ++nodes_;
    if (deadline_ != nullptr && (nodes_ & 255) == 0 && deadline_->expired()) aborted_ = true;
    if (aborted_) return false;
    if (!completable(last_start)) return false;

    for (int i = 0; i < static_cast<int>(items_.size()); ++i) {
      if (start_[i] >= 0) continue;
      auto& item = items_[i];
      for (int o : item.ops) {
        if (dominated(item, o)) continue;
        auto t = earliest_start(item, ops_[o], last_start);
        if (!t || (*t == last_start && i < last_index)) continue;

        start_[i] = *t;
        op_of_[i] = o;
        ops_[o].busy.push_back({*t, *t + item.demand.duration});
        patient_busy_[item.patient].push_back({*t, *t + item.demand.duration});
        if (dfs(placed + 1, i, *t)) return true;
        ops_[o].busy.pop_back();
        patient_busy_[item.patient].pop_back();
        start_[i] = -1;
        op_of_[i] = -1;
        if (aborted_) return false;
      }
    }
    return false;
  }

  const detail::Deadline* deadline_;
  std::vector<Operator> ops_;
  std::vector<Item> items_;
  std::vector<std::vector<Interval>> patient_busy_;
  std::vector<Slot> start_;
  std::vector<int> op_of_;
  std::int64_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace

DayDemand make_day_demand(const Instance& inst, const DayAssignment& assignment, Day day) {
  DayDemand demand{day, {}};
  for (const auto& occ : inst.occurrences) {
    auto it = assignment.find(occ.key());
    if (it == assignment.end() || it->second != day) continue;
    for (ServiceId s : occ.services) {
      const auto* svc = inst.find_service(s);
      if (svc == nullptr) throw InputError("occurrence references unknown service " + std::to_string(s.value));
      demand.items.push_back({{occ.key(), s}, svc->care_unit, svc->duration});
    }
  }
  return demand;
}

SPOutcome sp_solve(const DayDemand& demand, std::span<const OperatorShift> shifts) {
  return *DaySearch(demand, shifts, nullptr).run(demand.day);
}

namespace detail {

std::optional<SPOutcome> sp_solve_until(const DayDemand& demand, std::span<const OperatorShift> shifts,
                                        const Deadline& deadline) {
  return DaySearch(demand, shifts, &deadline).run(demand.day);
}

}  // namespace detail

}  // namespace ncd
