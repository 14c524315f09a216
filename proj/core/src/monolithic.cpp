#include "ncd/monolithic.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>

#include "assignment_search.hpp"
#include "compiled.hpp"
#include "ncd/error.hpp"
#include "ncd/subproblem.hpp"
#include "ncd/verify.hpp"
#include "subproblem_bounded.hpp"

namespace ncd {

namespace {

using detail::Clock;

class MonolithicSearch : public detail::AssignmentSearch {
 public:
  MonolithicSearch(const detail::Problem& problem, detail::Deadline deadline)
      : AssignmentSearch(problem, no_cuts_, deadline),
        pending_(static_cast<std::size_t>(problem.horizon) + 1, 0),
        agenda_(static_cast<std::size_t>(problem.horizon) + 1) {
    for (std::size_t o = 0; o < problem.occs.size(); ++o) {
      for (Day d : domain(static_cast<int>(o))) ++pending_[d];
    }
  }

  [[nodiscard]] const std::vector<DailySchedule>& best_agendas() const { return best_agendas_; }
  [[nodiscard]] int sp_calls() const { return sp_calls_; }
  [[nodiscard]] std::int64_t sp_ms() const { return sp_ms_; }

 protected:
  bool after_decide(int o) override {
    auto& checked = frames_.emplace_back();
    std::vector<Day> completed;
    for (Day d : domain(o)) {
      if (--pending_[d] == 0) completed.push_back(d);
    }
    for (Day d : completed) {
      auto schedule = check_day(d);
      if (!schedule) return false;
      if (!schedule->entries.empty()) {
        agenda_[d] = std::move(*schedule);
        checked.push_back(d);
      }
    }
    return true;
  }

  void undo_decide(int o) override {
    for (Day d : domain(o)) ++pending_[d];
    for (Day d : frames_.back()) agenda_[d].reset();
    frames_.pop_back();
  }

  void on_incumbent() override {
    best_agendas_.clear();
    for (const auto& a : agenda_) {
      if (a) best_agendas_.push_back(*a);
    }
  }

 private:
  // Feasible agenda of a completed day, or nullopt when the day cannot be
  // served (or the budget ran out).
  std::optional<DailySchedule> check_day(Day d) {
    DayDemand demand{d, {}};
    const auto& inst = *problem_.instance;
    for (std::size_t q = 0; q < problem_.occs.size(); ++q) {
      if (days()[q] != d) continue;
      const auto& occ = *problem_.occs[q].source;
      for (ServiceId s : occ.services) {
        const auto* svc = inst.find_service(s);
        demand.items.push_back({{occ.key(), s}, svc->care_unit, svc->duration});
      }
    }
    if (demand.items.empty()) return DailySchedule{d, {}};

    ++sp_calls_;
    const auto started = Clock::now();
    const auto shifts = inst.shifts_on(d);
    auto outcome = detail::sp_solve_until(demand, shifts, deadline());
    sp_ms_ += detail::elapsed_ms(started);
    if (!outcome) {
      abort_search();
      return std::nullopt;
    }
    if (outcome->status == SpStatus::Infeasible) return std::nullopt;
    return std::move(outcome->schedule);
  }

  static inline const std::vector<detail::CompiledCut> no_cuts_{};

  std::vector<int> pending_;
  std::vector<std::optional<DailySchedule>> agenda_;
  std::vector<std::vector<Day>> frames_;
  std::vector<DailySchedule> best_agendas_;
  int sp_calls_ = 0;
  std::int64_t sp_ms_ = 0;
};

// Exhaustive agenda check on bitmasks, memoising failed partial states.
class AgendaEnumerator {
 public:
  AgendaEnumerator(const Instance& inst, Day day, const std::vector<const PacketOccurrence*>& occs) {
    std::map<PatientId, int> patient;
    for (const auto* occ : occs) {
      const int p = patient.emplace(occ->patient, static_cast<int>(patient.size())).first->second;
      for (ServiceId s : occ->services) {
        const auto* svc = inst.find_service(s);
        items_.push_back({p, svc->care_unit, svc->duration});
      }
    }
    for (const auto& sh : inst.shifts_on(day)) ops_.push_back({sh.care_unit, sh.start, sh.end()});
    op_mask_.assign(ops_.size(), 0);
    patient_mask_.assign(patient.size(), 0);
  }

  bool feasible() { return place(0); }

 private:
  struct ItemSpec {
    int patient;
    CareUnitId unit;
    int duration;
  };
  struct OpSpec {
    CareUnitId unit;
    Slot start;
    Slot end;
  };

  std::string state_key(std::size_t i) const {
    std::string key(reinterpret_cast<const char*>(&i), sizeof i);
    key.append(reinterpret_cast<const char*>(op_mask_.data()), op_mask_.size() * sizeof(std::uint64_t));
    key.append(reinterpret_cast<const char*>(patient_mask_.data()), patient_mask_.size() * sizeof(std::uint64_t));
    return key;
  }

  bool place(std::size_t i) {
    if (i == items_.size()) return true;
    auto key = state_key(i);
    if (failed_.contains(key)) return false;
    const auto& item = items_[i];
    const std::uint64_t block = (item.duration >= 64) ? ~0ULL : ((1ULL << item.duration) - 1);
    for (std::size_t o = 0; o < ops_.size(); ++o) {
      if (ops_[o].unit != item.unit) continue;
      for (Slot t = ops_[o].start; t + item.duration <= ops_[o].end; ++t) {
        const std::uint64_t mask = block << t;
        if ((op_mask_[o] & mask) != 0 || (patient_mask_[item.patient] & mask) != 0) continue;
        op_mask_[o] |= mask;
        patient_mask_[item.patient] |= mask;
        const bool ok = place(i + 1);
        op_mask_[o] &= ~mask;
        patient_mask_[item.patient] &= ~mask;
        if (ok) return true;
      }
    }
    failed_.insert(std::move(key));
    return false;
  }

  std::vector<ItemSpec> items_;
  std::vector<OpSpec> ops_;
  std::vector<std::uint64_t> op_mask_;
  std::vector<std::uint64_t> patient_mask_;
  std::unordered_set<std::string> failed_;
};

}  // namespace

SolveReport monolithic_solve(const Instance& instance, std::chrono::milliseconds time_budget) {
  if (time_budget.count() <= 0) throw InputError("monolithic_solve: time budget must be positive");
  validate(instance);

  const auto started = Clock::now();
  const auto problem = detail::compile(instance);
  MonolithicSearch search(problem, detail::Deadline(time_budget));
  const auto result = search.run();

  SolveReport report;
  report.status = result.status;
  report.objective = result.objective;
  report.upper_bound = result.upper_bound;
  report.solution.assignment = detail::to_assignment(problem, result.days);
  if (result.objective > 0) report.solution.agendas = search.best_agendas();
  report.upper_bound_trace = {result.upper_bound};
  report.lower_bound_trace = {result.objective};
  report.iterations = 1;
  report.sp_calls = search.sp_calls();
  report.total_ms = detail::elapsed_ms(started);
  report.sp_ms = search.sp_ms();
  report.master_ms = std::max<std::int64_t>(0, report.total_ms - report.sp_ms);
  return report;
}

int brute_force_optimum(const Instance& instance) {
  validate(instance);
  if (instance.slots_per_day > 64) throw InputError("brute_force_optimum: slots_per_day exceeds 64");
  long long count = 1;
  for (std::size_t i = 0; i < instance.occurrences.size(); ++i) {
    count *= instance.horizon_days + 1;
    if (count > kBruteForceLimit) {
      throw InputError("brute_force_optimum: (horizon + 1)^occurrences exceeds " + std::to_string(kBruteForceLimit));
    }
  }

  const auto& occs = instance.occurrences;
  const std::size_t n = occs.size();
  std::vector<Day> value(n, 0);  // 0 = unscheduled
  std::map<std::pair<Day, std::vector<std::size_t>>, bool> day_cache;
  int best = 0;

  for (long long iter = 0; iter < count; ++iter) {
    if (iter > 0) {
      for (std::size_t i = 0; i < n; ++i) {
        if (++value[i] <= instance.horizon_days) break;
        value[i] = 0;
      }
    }

    int scheduled = 0;
    bool in_window = true;
    for (std::size_t i = 0; i < n && in_window; ++i) {
      if (value[i] == 0) continue;
      ++scheduled;
      in_window = within_tolerance(value[i], occs[i].ideal_date, occs[i].tolerance);
    }
    if (!in_window || scheduled <= best) continue;

    DayAssignment assignment;
    std::map<Day, std::vector<std::size_t>> by_day;
    for (std::size_t i = 0; i < n; ++i) {
      assignment[occs[i].key()] = value[i] == 0 ? std::nullopt : std::optional<Day>(value[i]);
      if (value[i] != 0) by_day[value[i]].push_back(i);
    }
    if (!verify_assignment(instance, assignment).empty()) continue;

    bool all_days = true;
    for (const auto& [day, members] : by_day) {
      auto [it, inserted] = day_cache.try_emplace({day, members}, false);
      if (inserted) {
        std::vector<const PacketOccurrence*> on_day;
        for (std::size_t i : members) on_day.push_back(&occs[i]);
        it->second = AgendaEnumerator(instance, day, on_day).feasible();
      }
      if (!it->second) {
        all_days = false;
        break;
      }
    }
    if (all_days) best = scheduled;
  }
  return best;
}

}  // namespace ncd
