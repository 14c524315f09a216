#include "ncd/lbbd.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "deadline.hpp"
#include "ncd/error.hpp"
#include "ncd/subproblem.hpp"
#include "ncd/verify.hpp"
#include "subproblem_bounded.hpp"

namespace ncd {

bool same_result(const SolveReport& a, const SolveReport& b) {
  return a.status == b.status && a.solution == b.solution && a.objective == b.objective &&
         a.upper_bound == b.upper_bound && a.upper_bound_trace == b.upper_bound_trace &&
         a.lower_bound_trace == b.lower_bound_trace && a.trace == b.trace && a.iterations == b.iterations &&
         a.cuts == b.cuts && a.sp_calls == b.sp_calls;
}

NoGoodCut compute_nogood(Day day, const DayAssignment& assignment, int gid) {
  NoGoodCut cut{day, {}, gid};
  for (const auto& [key, d] : assignment) {
    if (d == day) cut.group.push_back(key);
  }
  if (cut.group.empty()) {
    throw InputError("compute_nogood: no occurrence is assigned to day " + std::to_string(day));
  }
  return cut;
}

namespace {

using detail::Clock;

using DayKey = std::pair<Day, std::vector<OccurrenceKey>>;

std::map<Day, std::vector<OccurrenceKey>> group_by_day(const DayAssignment& assignment) {
  std::map<Day, std::vector<OccurrenceKey>> out;
  for (const auto& [key, day] : assignment) {
    if (day) out[*day].push_back(key);
  }
  return out;
}

FullSolution all_unscheduled_solution(const Instance& instance) { return {all_unscheduled(instance), {}}; }

}  // namespace

SolveReport lbbd_solve(const Instance& instance, const DriverConfig& config) {
  if (config.time_budget.count() <= 0) throw InputError("lbbd_solve: time budget must be positive");
  validate(instance);

  const auto started = Clock::now();
  const detail::Deadline deadline(config.time_budget);

  SolveReport report;
  report.solution = all_unscheduled_solution(instance);
  report.upper_bound = static_cast<int>(instance.occurrences.size());
  report.status = SolveStatus::TimeLimit;

  CutPool pool;
  int next_gid = 1;
  std::map<DayKey, SPOutcome> sp_cache;

  auto finish = [&](SolveStatus status) {
    report.status = status;
    report.iterations = static_cast<int>(report.trace.size());
    report.cuts = pool.cuts();
    report.total_ms = detail::elapsed_ms(started);
    return report;
  };

  while (true) {
    const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(deadline.remaining());
    if (remaining.count() <= 0) return finish(SolveStatus::TimeLimit);

    IterationRecord rec;
    rec.iteration = static_cast<int>(report.trace.size()) + 1;

    const auto master_started = Clock::now();
    const MasterOutcome master = master_solve(instance, pool, remaining);
    report.master_ms += detail::elapsed_ms(master_started);

    if (master.assignment.size() != instance.occurrences.size()) {
      // Unreachable: leaving everything unscheduled always satisfies the master.
      throw std::logic_error("lbbd_solve: master problem reported infeasible");
    }

    report.upper_bound = std::min(report.upper_bound, master.upper_bound);
    rec.master_assignment = master.assignment;
    rec.master_objective = master.objective;
    rec.upper_bound = report.upper_bound;

    if (master.status == SolveStatus::TimeLimit) {
      rec.lower_bound = report.objective;
      report.upper_bound_trace.push_back(report.upper_bound);
      report.lower_bound_trace.push_back(report.objective);
      report.trace.push_back(std::move(rec));
      return finish(report.objective >= report.upper_bound ? SolveStatus::Optimal : SolveStatus::TimeLimit);
    }

    // Subproblems, one per used day, merged in ascending day order.
    const auto sp_started = Clock::now();
    const auto by_day = group_by_day(master.assignment);
    std::map<Day, std::optional<SPOutcome>> outcomes;
    std::map<Day, std::future<std::optional<SPOutcome>>> pending;
    for (const auto& [day, keys] : by_day) {
      if (auto hit = sp_cache.find({day, keys}); hit != sp_cache.end()) {
        outcomes[day] = hit->second;
        continue;
      }
      ++report.sp_calls;
      auto solve = [&instance, &master, &deadline, day = day] {
        const auto demand = make_day_demand(instance, master.assignment, day);
        const auto shifts = instance.shifts_on(day);
        return detail::sp_solve_until(demand, shifts, deadline);
      };
      if (config.parallel_subproblems) {
        pending.emplace(day, std::async(std::launch::async, solve));
      } else {
        outcomes[day] = solve();
      }
    }
    for (auto& [day, fut] : pending) outcomes[day] = fut.get();
    report.sp_ms += detail::elapsed_ms(sp_started);

    bool aborted = false;
    for (const auto& [day, outcome] : outcomes) {
      if (!outcome) {
        aborted = true;
        continue;
      }
      sp_cache.emplace(DayKey{day, by_day.at(day)}, *outcome);
      if (outcome->status == SpStatus::Infeasible) rec.infeasible_days.push_back(day);
    }
    if (aborted) {
      rec.lower_bound = report.objective;
      report.upper_bound_trace.push_back(report.upper_bound);
      report.lower_bound_trace.push_back(report.objective);
      report.trace.push_back(std::move(rec));
      return finish(SolveStatus::TimeLimit);
    }

    // Juxtapose the feasible days; on a fully feasible iteration this is the optimum.
    FullSolution candidate{master.assignment, {}};
    for (const auto& [day, outcome] : outcomes) {
      if (outcome->status == SpStatus::Feasible) {
        candidate.agendas.push_back(outcome->schedule);
      } else {
        for (const auto& key : by_day.at(day)) candidate.assignment[key] = std::nullopt;
      }
    }
    const int candidate_objective = objective_value(instance, candidate.assignment);
    if (rec.infeasible_days.empty()) {
      if (!verify_solution(instance, candidate).empty()) {
        throw std::logic_error("lbbd_solve: converged solution fails verification");
      }
      report.objective = candidate_objective;
      report.solution = std::move(candidate);
    } else if (candidate_objective > report.objective && verify_solution(instance, candidate).empty()) {
      report.objective = candidate_objective;
      report.solution = std::move(candidate);
    }

    for (Day day : rec.infeasible_days) {
      if (pool.add(compute_nogood(day, master.assignment, next_gid))) {
        rec.new_gids.push_back(next_gid);
        ++next_gid;
      }
    }

    rec.lower_bound = report.objective;
    report.upper_bound_trace.push_back(report.upper_bound);
    report.lower_bound_trace.push_back(report.objective);

    if (config.diagnostics != nullptr) {
      *config.diagnostics << "lbbd iteration=" << rec.iteration << " master_objective=" << rec.master_objective
                          << " infeasible_days=" << rec.infeasible_days.size() << " cuts=" << pool.size()
                          << " elapsed_ms=" << detail::elapsed_ms(started) << '\n';
    }

    const bool converged = rec.infeasible_days.empty();
    report.trace.push_back(std::move(rec));
    if (converged) {
      report.upper_bound = report.objective;
      return finish(SolveStatus::Optimal);
    }
    // A verified incumbent that meets the proven bound needs no further cuts.
    if (report.objective >= report.upper_bound) return finish(SolveStatus::Optimal);
  }
}

}  // namespace ncd
