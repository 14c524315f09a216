#pragma once

// Depth-first branch-and-bound over packet occurrences, shared by the master
// solver (with no-good cuts) and the monolithic solver (with agenda checks).
//
// Occurrences are branched in key order; each takes its live days in
// ascending order and then "unscheduled". Only strictly improving leaves
// replace the incumbent, so the first optimum found is the lexicographically
// smallest one.

#include <cstdint>
#include <map>
#include <vector>

#include "compiled.hpp"
#include "deadline.hpp"
#include "ncd/master.hpp"
#include "ncd/model.hpp"

namespace ncd::detail {

struct CompiledCut {
  Day day;
  std::vector<int> members;  ///< occurrence indices, sorted
};

inline constexpr Day kUndecided = -1;
inline constexpr Day kUnscheduled = 0;

struct SearchResult {
  SolveStatus status = SolveStatus::Optimal;
  std::vector<Day> days;  ///< per occurrence index: kUnscheduled or a day
  int objective = 0;
  int upper_bound = 0;
  std::int64_t nodes = 0;
};

/// Throws InputError when a cut names an occurrence the instance lacks.
std::vector<CompiledCut> compile_cuts(const Problem& problem, const CutPool& pool);
DayAssignment to_assignment(const Problem& problem, const std::vector<Day>& days);

class AssignmentSearch {
 public:
  AssignmentSearch(const Problem& problem, const std::vector<CompiledCut>& cuts, Deadline deadline);
  virtual ~AssignmentSearch() = default;

  AssignmentSearch(const AssignmentSearch&) = delete;
  AssignmentSearch& operator=(const AssignmentSearch&) = delete;

  SearchResult run();

 protected:
  /// Called once `o` holds its value and the base bookkeeping is done.
  /// Returning false prunes the branch. undo_decide(o) is called afterwards
  /// in either case.
  virtual bool after_decide(int /*o*/) { return true; }
  virtual void undo_decide(int /*o*/) {}
  virtual void on_incumbent() {}

  [[nodiscard]] const std::vector<Day>& days() const { return day_; }
  [[nodiscard]] const std::vector<Day>& domain(int o) const { return domain_[o]; }
  [[nodiscard]] bool aborted() const { return aborted_; }
  [[nodiscard]] const Deadline& deadline() const { return deadline_; }
  void abort_search() { aborted_ = true; }

  const Problem& problem_;

 private:
  bool can_place(int o, Day d) const;
  bool has_live_value(int o) const;
  bool need_supportable(const NecessityReq& need, Day day) const;
  bool necessities_hold(int o) const;
  void place(int o, Day d);
  void unplace(int o, Day d);
  void dfs(int pos);
  bool optimistic_exceeds_best(int pos);
  /// Occurrences among the live undecided ones that cannot all be placed for
  /// lack of residual capacity in some care unit.
  int capacity_shortfall(int pos);

  // Most occurrences of patient p among [from, end) that can still be
  // scheduled under the care-pathway rules alone, given the decided days of
  // the patient's earlier occurrences; -1 if none of the completions meets
  // the necessities. Capacity and cuts are ignored.
  int patient_bound(int p, int from);
  int solve_patient(int p, int from);
  void patient_dfs(int p, int k, int count);
  bool patient_needs_met(int p) const;

  const std::vector<CompiledCut>& cuts_;
  Deadline deadline_;
  int n_;
  std::vector<std::vector<Day>> domain_;
  std::vector<std::vector<int>> cuts_of_;
  std::vector<Day> day_;
  std::vector<std::vector<int>> residual_;
  std::vector<int> matched_;
  int scheduled_ = 0;
  int best_ = 0;
  std::vector<Day> best_days_;
  int root_bound_ = 0;

  std::vector<int> patient_of_;
  std::vector<int> patient_begin_;
  std::vector<int> patient_end_;
  std::vector<int> patient_root_;
  std::map<std::vector<Day>, int> patient_cache_;  ///< key: patient, then decided prefix
  std::vector<std::vector<std::pair<int, int>>> unit_items_;  ///< per unit: (duration, occurrence), ascending
  std::vector<char> live_;
  std::vector<Day> scratch_;
  int scratch_best_ = 0;
  int scratch_cap_ = 0;
  std::int64_t scratch_nodes_ = 0;
  std::int64_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace ncd::detail
