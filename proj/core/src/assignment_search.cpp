#include "assignment_search.hpp"

#include <algorithm>

namespace ncd::detail {

AssignmentSearch::AssignmentSearch(const Problem& problem, const std::vector<CompiledCut>& cuts, Deadline deadline)
    : problem_(problem),
      cuts_(cuts),
      deadline_(deadline),
      n_(static_cast<int>(problem.occs.size())),
      domain_(problem.occs.size()),
      cuts_of_(problem.occs.size()),
      day_(problem.occs.size(), kUndecided),
      residual_(problem.capacity),
      matched_(cuts.size(), 0) {
  std::vector<std::vector<Day>> banned(problem.occs.size());
  for (std::size_t c = 0; c < cuts_.size(); ++c) {
    if (cuts_[c].members.size() == 1) {
      banned[cuts_[c].members.front()].push_back(cuts_[c].day);
    } else {
      for (int o : cuts_[c].members) cuts_of_[o].push_back(static_cast<int>(c));
    }
  }
  for (int o = 0; o < n_; ++o) {
    const auto& occ = problem_.occs[o];
    if (occ.self_blocked) continue;
    for (Day d : occ.window) {
      if (std::find(banned[o].begin(), banned[o].end(), d) != banned[o].end()) continue;
      const bool fits = std::all_of(occ.loads.begin(), occ.loads.end(),
                                    [&](const UnitLoad& l) { return l.duration <= problem_.capacity[d][l.unit]; });
      if (fits) domain_[o].push_back(d);
    }
  }

  patient_of_.assign(static_cast<std::size_t>(n_), 0);
  for (int o = 0; o < n_; ++o) {
    if (o == 0 || problem_.occs[o].key.patient != problem_.occs[o - 1].key.patient) {
      patient_begin_.push_back(o);
      patient_end_.push_back(o);
    }
    patient_of_[o] = static_cast<int>(patient_begin_.size()) - 1;
    patient_end_.back() = o + 1;
  }
  unit_items_.resize(problem_.units.size());
  for (int o = 0; o < n_; ++o) {
    if (domain_[o].empty()) continue;
    for (const auto& l : problem_.occs[o].loads) unit_items_[l.unit].emplace_back(l.duration, o);
  }
  for (auto& items : unit_items_) std::sort(items.begin(), items.end());
  live_.assign(static_cast<std::size_t>(n_), 0);

  scratch_.assign(static_cast<std::size_t>(n_), kUndecided);
  for (std::size_t p = 0; p < patient_begin_.size(); ++p) {
    patient_root_.push_back(solve_patient(static_cast<int>(p), patient_begin_[p]));
  }
}

namespace {

constexpr std::int64_t kPatientNodeLimit = 200'000;

}  // namespace

bool AssignmentSearch::patient_needs_met(int p) const {
  for (int q = patient_begin_[p]; q < patient_end_[p]; ++q) {
    const Day dq = scratch_[q];
    if (dq < 1) continue;
    for (const auto& need : problem_.occs[q].needs) {
      if (dq + need.d_max > problem_.horizon || (need.self_support && need.d_min == 0)) continue;
      const bool met = std::any_of(need.supporters.begin(), need.supporters.end(), [&](int s) {
        return scratch_[s] >= dq + need.d_min && scratch_[s] <= dq + need.d_max;
      });
      if (!met) return false;
    }
  }
  return true;
}

void AssignmentSearch::patient_dfs(int p, int k, int count) {
  if (scratch_best_ == scratch_cap_ || ++scratch_nodes_ > kPatientNodeLimit) return;
  if (k == patient_end_[p]) {
    if (count > scratch_best_ && patient_needs_met(p)) scratch_best_ = count;
    return;
  }
  if (count + (patient_end_[p] - k) <= scratch_best_) return;
  const auto& occ = problem_.occs[k];
  for (Day d : domain_[k]) {
    const bool clash = std::any_of(occ.conflicts.begin(), occ.conflicts.end(), [&](const PairConflict& c) {
      return c.other < k && scratch_[c.other] >= 1 && problem_.forbidden_offset(c, d, scratch_[c.other]);
    });
    if (clash) continue;
    scratch_[k] = d;
    patient_dfs(p, k + 1, count + 1);
    if (scratch_best_ == scratch_cap_) break;
  }
  scratch_[k] = kUnscheduled;
  patient_dfs(p, k + 1, count);
  scratch_[k] = kUndecided;
}

int AssignmentSearch::solve_patient(int p, int from) {
  for (int q = patient_begin_[p]; q < from; ++q) scratch_[q] = day_[q];
  scratch_best_ = -1;
  scratch_cap_ = patient_end_[p] - from;
  scratch_nodes_ = 0;
  patient_dfs(p, from, 0);
  for (int q = patient_begin_[p]; q < patient_end_[p]; ++q) scratch_[q] = kUndecided;
  if (scratch_nodes_ > kPatientNodeLimit) return scratch_cap_;  // gave up: trivial bound
  return scratch_best_;
}

int AssignmentSearch::patient_bound(int p, int from) {
  if (from == patient_begin_[p]) return patient_root_[p];
  std::vector<Day> key;
  key.reserve(static_cast<std::size_t>(from - patient_begin_[p] + 1));
  key.push_back(p);
  for (int q = patient_begin_[p]; q < from; ++q) key.push_back(day_[q]);
  if (auto it = patient_cache_.find(key); it != patient_cache_.end()) return it->second;
  if (patient_cache_.size() > 1'000'000) patient_cache_.clear();
  const int bound = solve_patient(p, from);
  patient_cache_.emplace(std::move(key), bound);
  return bound;
}

bool AssignmentSearch::need_supportable(const NecessityReq& need, Day day) const {
  if (day + need.d_max > problem_.horizon) return true;
  if (need.self_support && need.d_min == 0) return true;
  const Day lo = day + need.d_min;
  const Day hi = day + need.d_max;
  for (int s : need.supporters) {
    const Day ds = day_[s];
    if (ds >= 1) {
      if (ds >= lo && ds <= hi) return true;
    } else if (ds == kUndecided) {
      const auto& dom = domain_[s];
      auto it = std::lower_bound(dom.begin(), dom.end(), lo);
      if (it != dom.end() && *it <= hi) return true;
    }
  }
  return false;
}

bool AssignmentSearch::can_place(int o, Day d) const {
  const auto& occ = problem_.occs[o];
  for (const auto& l : occ.loads) {
    if (residual_[d][l.unit] < l.duration) return false;
  }
  for (const auto& c : occ.conflicts) {
    const Day other = day_[c.other];
    if (other >= 1 && problem_.forbidden_offset(c, d, other)) return false;
  }
  for (int c : cuts_of_[o]) {
    if (cuts_[c].day == d && matched_[c] + 1 == static_cast<int>(cuts_[c].members.size())) return false;
  }
  for (const auto& need : occ.needs) {
    if (!need_supportable(need, d)) return false;
  }
  return true;
}

bool AssignmentSearch::has_live_value(int o) const {
  return std::any_of(domain_[o].begin(), domain_[o].end(), [&](Day d) { return can_place(o, d); });
}

bool AssignmentSearch::necessities_hold(int o) const {
  for (int q : problem_.occs[o].same_patient) {
    const Day dq = day_[q];
    if (dq < 1) continue;
    for (const auto& need : problem_.occs[q].needs) {
      if (!need_supportable(need, dq)) return false;
    }
  }
  return true;
}

void AssignmentSearch::place(int o, Day d) {
  day_[o] = d;
  if (d == kUnscheduled) return;
  ++scheduled_;
  for (const auto& l : problem_.occs[o].loads) residual_[d][l.unit] -= l.duration;
  for (int c : cuts_of_[o]) {
    if (cuts_[c].day == d) ++matched_[c];
  }
}

void AssignmentSearch::unplace(int o, Day d) {
  day_[o] = kUndecided;
  if (d == kUnscheduled) return;
  --scheduled_;
  for (const auto& l : problem_.occs[o].loads) residual_[d][l.unit] += l.duration;
  for (int c : cuts_of_[o]) {
    if (cuts_[c].day == d) --matched_[c];
  }
}

// Scheduled so far plus, per patient, the smaller of its pathway bound and
// the number of its undecided occurrences that still have a live day.
bool AssignmentSearch::optimistic_exceeds_best(int pos) {
  const int first = patient_of_[pos];
  std::vector<int> bound;
  int optimistic = scheduled_;
  for (int p = first; p < static_cast<int>(patient_begin_.size()); ++p) {
    const int b = p == first ? patient_bound(p, pos) : patient_root_[p];
    if (b < 0) return false;
    bound.push_back(b);
    optimistic += b;
  }
  if (optimistic <= best_) return false;
  int live_total = 0;
  for (int p = first; p < static_cast<int>(patient_begin_.size()); ++p) {
    const int from = std::max(pos, patient_begin_[p]);
    int live = 0;
    for (int u = from; u < patient_end_[p]; ++u) {
      live_[u] = has_live_value(u) ? 1 : 0;
      live += live_[u];
    }
    live_total += live;
    const int b = bound[static_cast<std::size_t>(p - first)];
    if (live < b) {
      optimistic -= b - live;
      if (optimistic <= best_) return false;
    }
  }
  // The capacity bound is costly; near the leaves the cheap bounds suffice.
  if (2 * pos > n_) return true;
  return scheduled_ + live_total - capacity_shortfall(pos) > best_;
}

int AssignmentSearch::capacity_shortfall(int pos) {
  const int horizon = problem_.horizon;
  int worst = 0;
  std::vector<int> prefix(static_cast<std::size_t>(horizon) + 1, 0);
  std::vector<int> best(static_cast<std::size_t>(horizon) + 1, 0);
  for (std::size_t u = 0; u < unit_items_.size(); ++u) {
    const auto& items = unit_items_[u];
    for (Day d = 1; d <= horizon; ++d) prefix[d] = prefix[d - 1] + residual_[d][u];
    // best[b]: largest total shortfall over disjoint intervals within days 1..b.
    for (Day b = 1; b <= horizon; ++b) {
      best[b] = best[b - 1];
      for (Day a = 1; a <= b; ++a) {
        const int room = prefix[b] - prefix[a - 1];
        int used = 0;
        int inside = 0;
        int fitted = 0;
        for (const auto& [dur, o] : items) {
          if (o < pos || !live_[o]) continue;
          const auto& dom = domain_[o];
          if (dom.front() < a || dom.back() > b) continue;
          ++inside;
          if (used + dur <= room) {
            used += dur;
            ++fitted;
          }
        }
        if (inside > fitted) best[b] = std::max(best[b], best[a - 1] + inside - fitted);
      }
    }
    worst = std::max(worst, best[horizon]);
  }
  return worst;
}

void AssignmentSearch::dfs(int pos) {
  if (aborted_) return;
  if ((++nodes_ & 1023) == 0 && deadline_.expired()) {
    aborted_ = true;
    return;
  }
  if (pos == n_) {
    if (scheduled_ > best_) {
      best_ = scheduled_;
      best_days_ = day_;
      on_incumbent();
    }
    return;
  }

  if (!optimistic_exceeds_best(pos)) return;

  const int o = pos;
  auto try_value = [&](Day d) {
    place(o, d);
    const bool ok = necessities_hold(o);
    if (ok && after_decide(o)) dfs(pos + 1);
    if (ok) undo_decide(o);
    unplace(o, d);
  };
  for (Day d : domain_[o]) {
    if (aborted_) return;
    if (can_place(o, d)) try_value(d);
  }
  if (!aborted_) try_value(kUnscheduled);
}

SearchResult AssignmentSearch::run() {
  best_ = 0;
  best_days_.assign(static_cast<std::size_t>(n_), kUnscheduled);
  root_bound_ = 0;
  for (std::size_t p = 0; p < patient_begin_.size(); ++p) {
    int live = 0;
    for (int o = patient_begin_[p]; o < patient_end_[p]; ++o) live += has_live_value(o) ? 1 : 0;
    root_bound_ += std::max(0, std::min(live, patient_root_[p]));
  }
  dfs(0);

  SearchResult r;
  r.days = best_days_;
  r.objective = best_;
  r.nodes = nodes_;
  if (aborted_) {
    r.status = SolveStatus::TimeLimit;
    r.upper_bound = std::max(best_, root_bound_);
  } else {
    r.upper_bound = best_;
  }
  return r;
}

}  // namespace ncd::detail
