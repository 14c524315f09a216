#include "ncd/master.hpp"

#include <algorithm>
#include <map>

#include "assignment_search.hpp"
#include "compiled.hpp"
#include "ncd/error.hpp"

namespace ncd {

bool CutPool::add(NoGoodCut cut) {
  if (cut.group.empty()) throw InputError("no-good cut " + std::to_string(cut.gid) + " has an empty group");
  if (!cuts_.empty() && cut.gid <= cuts_.back().gid) {
    throw InputError("no-good cut gid " + std::to_string(cut.gid) + " does not exceed " +
                     std::to_string(cuts_.back().gid));
  }
  std::sort(cut.group.begin(), cut.group.end());
  cut.group.erase(std::unique(cut.group.begin(), cut.group.end()), cut.group.end());
  if (!seen_.emplace(cut.day, cut.group).second) return false;
  cuts_.push_back(std::move(cut));
  return true;
}

bool CutPool::contains(Day day, const std::vector<OccurrenceKey>& group) const {
  auto sorted = group;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  return seen_.contains({day, sorted});
}

bool cut_blocks(const NoGoodCut& cut, const DayAssignment& assignment) {
  if (cut.group.empty()) return false;
  return std::all_of(cut.group.begin(), cut.group.end(), [&](const OccurrenceKey& k) {
    auto it = assignment.find(k);
    return it != assignment.end() && it->second == cut.day;
  });
}

bool capacity_ok(const Instance& inst, const DayAssignment& assignment) {
  std::map<std::pair<Day, CareUnitId>, long> load;
  for (const auto& occ : inst.occurrences) {
    auto it = assignment.find(occ.key());
    if (it == assignment.end() || !it->second) continue;
    for (ServiceId s : occ.services) {
      if (const auto* svc = inst.find_service(s)) load[{*it->second, svc->care_unit}] += svc->duration;
    }
  }
  std::map<std::pair<Day, CareUnitId>, long> capacity;
  for (const auto& sh : inst.shifts) capacity[{sh.day, sh.care_unit}] += sh.duration;
  return std::all_of(load.begin(), load.end(), [&](const auto& entry) {
    auto cap = capacity.find(entry.first);
    return entry.second <= (cap == capacity.end() ? 0 : cap->second);
  });
}

namespace detail {

std::vector<CompiledCut> compile_cuts(const Problem& problem, const CutPool& pool) {
  std::vector<CompiledCut> out;
  out.reserve(pool.size());
  for (const auto& cut : pool.cuts()) {
    CompiledCut c{cut.day, {}};
    for (const auto& key : cut.group) {
      const int o = problem.occ_index(key);
      if (o < 0) {
        throw InputError("no-good cut " + std::to_string(cut.gid) + " references an occurrence of patient " +
                         std::to_string(key.patient.value) + " unknown to the instance");
      }
      c.members.push_back(o);
    }
    std::sort(c.members.begin(), c.members.end());
    out.push_back(std::move(c));
  }
  return out;
}

DayAssignment to_assignment(const Problem& problem, const std::vector<Day>& days) {
  DayAssignment out;
  for (std::size_t o = 0; o < problem.occs.size(); ++o) {
    out.emplace(problem.occs[o].key, days[o] >= 1 ? std::optional<Day>(days[o]) : std::nullopt);
  }
  return out;
}

}  // namespace detail

MasterOutcome master_solve(const Instance& instance, const CutPool& pool, std::chrono::milliseconds time_budget) {
  if (time_budget.count() <= 0) throw InputError("master_solve: time budget must be positive");
  validate(instance);

  const auto problem = detail::compile(instance);
  const auto cuts = detail::compile_cuts(problem, pool);
  detail::AssignmentSearch search(problem, cuts, detail::Deadline(time_budget));
  const auto result = search.run();

  MasterOutcome out;
  out.status = result.status;
  out.assignment = detail::to_assignment(problem, result.days);
  out.objective = result.objective;
  out.upper_bound = result.upper_bound;
  out.nodes = result.nodes;
  return out;
}

}  // namespace ncd
