#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "ncd/error.hpp"
#include "ncd/generator.hpp"
#include "ncd/lbbd.hpp"
#include "ncd/subproblem.hpp"
#include "ncd/verify.hpp"

using namespace ncd;
using namespace std::chrono_literals;

namespace {

const OccurrenceKey kP1{PatientId(1), PacketId(1), 1};
const OccurrenceKey kP2{PatientId(2), PacketId(2), 1};

DriverConfig config(std::chrono::milliseconds budget = 60s) {
  DriverConfig c;
  c.time_budget = budget;
  return c;
}

void expect_bound_discipline(const SolveReport& r) {
  ASSERT_EQ(r.upper_bound_trace.size(), r.lower_bound_trace.size());
  for (std::size_t i = 0; i < r.upper_bound_trace.size(); ++i) {
    EXPECT_LE(r.lower_bound_trace[i], r.upper_bound_trace[i]);
    if (i > 0) {
      EXPECT_LE(r.upper_bound_trace[i], r.upper_bound_trace[i - 1]);
      EXPECT_GE(r.lower_bound_trace[i], r.lower_bound_trace[i - 1]);
    }
  }
  if (r.status == SolveStatus::Optimal) {
    EXPECT_EQ(r.objective, r.upper_bound);
    ASSERT_FALSE(r.upper_bound_trace.empty());
    EXPECT_EQ(r.lower_bound_trace.back(), r.upper_bound_trace.back());
  }
}

}  // namespace

TEST(ComputeNogood, GroupsEverythingOnTheDay) {
  const DayAssignment a{{kP1, 1}, {kP2, 1}};
  const auto cut = compute_nogood(1, a, 1);
  EXPECT_EQ(cut.day, 1);
  EXPECT_EQ(cut.gid, 1);
  EXPECT_EQ(cut.group, (std::vector<OccurrenceKey>{kP1, kP2}));
}

TEST(ComputeNogood, SingletonAndEmptyDays) {
  const DayAssignment a{{kP1, 1}, {kP2, 2}};
  EXPECT_EQ(compute_nogood(2, a, 4).group, (std::vector<OccurrenceKey>{kP2}));
  EXPECT_THROW((void)compute_nogood(3, a, 5), InputError);
}

TEST(LbbdSolve, FigureOneTrace) {
  const auto r = lbbd_solve(figure1_instance(), config());
  ASSERT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_EQ(r.objective, 2);
  EXPECT_EQ(r.solution.assignment.at(kP1), 3);
  EXPECT_EQ(r.solution.assignment.at(kP2), 1);
  EXPECT_TRUE(verify_solution(figure1_instance(), r.solution).empty());

  ASSERT_EQ(r.cuts.size(), 3u);
  EXPECT_EQ(r.cuts[0], (NoGoodCut{1, {kP1, kP2}, 1}));
  EXPECT_EQ(r.cuts[1], (NoGoodCut{1, {kP1}, 2}));
  EXPECT_EQ(r.cuts[2], (NoGoodCut{2, {kP1}, 3}));

  ASSERT_EQ(r.iterations, 4);
  EXPECT_EQ(r.trace[0].master_assignment, (DayAssignment{{kP1, 1}, {kP2, 1}}));
  EXPECT_EQ(r.trace[1].master_assignment, (DayAssignment{{kP1, 1}, {kP2, 2}}));
  EXPECT_EQ(r.trace[2].master_assignment, (DayAssignment{{kP1, 2}, {kP2, 1}}));
  EXPECT_EQ(r.trace[3].master_assignment, (DayAssignment{{kP1, 3}, {kP2, 1}}));
  EXPECT_EQ(r.upper_bound_trace, (std::vector<int>{2, 2, 2, 2}));
  EXPECT_EQ(r.lower_bound_trace, (std::vector<int>{0, 1, 1, 2}));
}

TEST(LbbdSolve, NothingFitsAnywhere) {
  Instance inst;
  inst.horizon_days = 3;
  inst.slots_per_day = 10;
  inst.care_units = {CareUnitId(1)};
  inst.services = {{ServiceId(1), CareUnitId(1), 8}};
  for (Day d = 1; d <= 3; ++d) inst.shifts.push_back({d, CareUnitId(1), OperatorId(1), 0, 5});
  inst.occurrences = {{PatientId(1), PacketId(1), 1, 2, 1, {ServiceId(1)}}};
  const auto r = lbbd_solve(inst, config());
  EXPECT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_EQ(r.objective, 0);
  EXPECT_EQ(r.sp_calls, 0);
  EXPECT_EQ(r.iterations, 1);
}

TEST(LbbdSolve, EmptyInstance) {
  Instance inst;
  inst.horizon_days = 2;
  inst.slots_per_day = 3;
  const auto r = lbbd_solve(inst, config());
  EXPECT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_EQ(r.objective, 0);
}

TEST(LbbdSolve, RejectsNonPositiveBudget) {
  EXPECT_THROW((void)lbbd_solve(figure1_instance(), config(0ms)), InputError);
}

TEST(LbbdSolve, CutsAreValidAndBoundsBehave) {
  int runs = 0;
  int with_cuts = 0;
  for (std::uint64_t seed = 1; runs < 120; ++seed) {
    const auto inst = generate_instance(fixtures::small_params(seed, 1 + static_cast<int>(seed % 6), 7));
    const auto r = lbbd_solve(inst, config());
    ++runs;
    ASSERT_EQ(r.status, SolveStatus::Optimal);
    expect_bound_discipline(r);
    EXPECT_TRUE(verify_solution(inst, r.solution).empty()) << "seed " << seed;
    EXPECT_EQ(objective_value(inst, r.solution.assignment), r.objective);

    int gid = 0;
    for (const auto& rec : r.trace) {
      for (int g : rec.new_gids) {
        const auto& cut = r.cuts.at(static_cast<std::size_t>(g - 1));
        EXPECT_EQ(cut.gid, g);
        EXPECT_GT(g, gid);
        gid = g;
        EXPECT_TRUE(cut_blocks(cut, rec.master_assignment));
        DayAssignment only_group;
        for (const auto& k : cut.group) only_group[k] = cut.day;
        EXPECT_EQ(sp_solve(make_day_demand(inst, only_group, cut.day), inst.shifts_on(cut.day)).status,
                  SpStatus::Infeasible);
      }
    }
    if (!r.cuts.empty()) ++with_cuts;
  }
  EXPECT_GT(with_cuts, 10);
}

TEST(LbbdSolve, DeterministicWithAndWithoutParallelDays) {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const auto inst = generate_instance(fixtures::small_params(seed, 5, 7));
    const auto a = lbbd_solve(inst, config());
    const auto b = lbbd_solve(inst, config());
    EXPECT_TRUE(same_result(a, b));
    auto par = config();
    par.parallel_subproblems = true;
    const auto c = lbbd_solve(inst, par);
    EXPECT_EQ(c.status, a.status);
    EXPECT_EQ(c.objective, a.objective);
    EXPECT_EQ(c.cuts, a.cuts);
    EXPECT_TRUE(same_result(a, c));
  }
}

TEST(LbbdSolve, DiagnosticsOneLinePerIteration) {
  std::ostringstream log;
  auto cfg = config();
  cfg.diagnostics = &log;
  const auto r = lbbd_solve(figure1_instance(), cfg);
  std::istringstream lines(log.str());
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    ++n;
    EXPECT_EQ(line.rfind("lbbd iteration=" + std::to_string(n) + " master_objective=", 0), 0u) << line;
    EXPECT_NE(line.find(" infeasible_days="), std::string::npos);
    EXPECT_NE(line.find(" cuts="), std::string::npos);
    EXPECT_NE(line.find(" elapsed_ms="), std::string::npos);
  }
  EXPECT_EQ(n, r.iterations);
}

TEST(LbbdSolve, TimeLimitReturnsAVerifiedIncumbent) {
  GenParams p;
  p.patients = 40;
  p.horizon_days = 30;
  p.seed = 17;
  const auto inst = generate_instance(p);
  const auto r = lbbd_solve(inst, config(300ms));
  expect_bound_discipline(r);
  EXPECT_TRUE(verify_solution(inst, r.solution).empty());
  EXPECT_EQ(objective_value(inst, r.solution.assignment), r.objective);
  EXPECT_LE(r.objective, r.upper_bound);
  EXPECT_LT(r.total_ms, 5000);
}
