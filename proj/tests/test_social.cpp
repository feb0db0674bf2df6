#include <doctest.h>

#include <vector>

#include "igame/social.hpp"
#include "test_support.hpp"

using namespace igame;
using igame::testing::make_scenario;
using igame::testing::tick;

namespace {

const CostModel q = CostModel::quadratic();

Allocation al(long long a, long long b) { return {tick(a), tick(b)}; }

}  // namespace

TEST_CASE("planner optimum for the two-flexible-agents example") {
  Scenario s = igame::testing::s1();
  auto opt = socially_optimal_allocation(q, s, SeparationMode::fcfs_compatible);
  CHECK(opt.cost == CostValue::from_exact(Rat(5)));
  CHECK(opt.argmin_set == std::vector<Allocation>{al(6, 11), al(7, 12)});
  REQUIRE(opt.lottery.size() == 1);
  CHECK(opt.lottery[0].alloc == al(7, 12));
}

TEST_CASE("equal desired times: mirrored pair resolved by a fair coin") {
  Scenario s = igame::testing::s2();
  auto opt = socially_optimal_allocation(q, s, SeparationMode::fcfs_compatible);
  CHECK(opt.cost == CostValue::from_exact(Rat(13)));
  CHECK(opt.argmin_set ==
        std::vector<Allocation>{al(7, 12), al(8, 13), al(12, 7), al(13, 8)});
  REQUIRE(opt.lottery.size() == 2);
  CHECK(opt.lottery[0] == AllocationBranch{Rat(1, 2), al(8, 13)});
  CHECK(opt.lottery[1] == AllocationBranch{Rat(1, 2), al(13, 8)});
  // The case formula reproduces the same lottery exactly.
  auto cases = closed_form_social_cases(q, s);
  CHECK(cases.lottery == opt.lottery);
  CHECK(cases.cost == opt.cost);
}

TEST_CASE("bare-crossing separation shrinks the spread") {
  Scenario s = igame::testing::s2();
  auto opt = socially_optimal_allocation(q, s, SeparationMode::bare_crossing);
  CHECK(opt.cost == CostValue::from_exact(Rat(8)));
  REQUIRE(opt.lottery.size() == 2);
  CHECK(opt.lottery[0].alloc == al(8, 12));
}

TEST_CASE("even desired gap: the split formula is an exact optimum") {
  Scenario s = make_scenario(0, 12, 4, 0, 7, 0, 9);
  auto opt = socially_optimal_allocation(q, s, SeparationMode::fcfs_compatible);
  auto cases = closed_form_social_cases(q, s);
  CHECK(cases.cost == opt.cost);
  REQUIRE(cases.lottery.size() == 1);
  CHECK(cases.lottery[0].alloc == al(6, 11));
  CHECK(opt.argmin_set == std::vector<Allocation>{al(5, 10), al(6, 11)});
}

TEST_CASE("odd desired gap: the rounding coin overpays") {
  Scenario s = make_scenario(0, 12, 4, 0, 8, 0, 9);
  auto opt = socially_optimal_allocation(q, s, SeparationMode::fcfs_compatible);
  auto cases = closed_form_social_cases(q, s);
  CHECK(opt.cost == CostValue::from_exact(Rat(8)));
  CHECK(opt.argmin_set == std::vector<Allocation>{al(6, 11)});
  CHECK(cases.cost == CostValue::from_exact(Rat(9)));
  REQUIRE(cases.lottery.size() == 2);
  CHECK(cases.lottery[0] == AllocationBranch{Rat(1, 2), al(6, 12)});
  CHECK(cases.lottery[1] == AllocationBranch{Rat(1, 2), al(7, 11)});
}

TEST_CASE("no-conflict scenarios pass through truthfully") {
  Scenario s = make_scenario(0, 12, 4, 0, 4, 0, 10);
  auto opt = socially_optimal_allocation(q, s, SeparationMode::fcfs_compatible);
  CHECK(opt.cost == CostValue());
  CHECK(opt.argmin_set == std::vector<Allocation>{al(4, 10)});
  CHECK(closed_form_social_cases(q, s).lottery == opt.lottery);
}

TEST_CASE("planner near the grid edge can undercut some earliest time") {
  // e = (5, 5), d = (5, 5): every optimum schedules one agent at 3 < 5.
  // The planner ignores feasibility by design; the selection step never
  // returns these because equilibria are admissible.
  Scenario s = make_scenario(0, 12, 4, 5, 5, 5, 5);
  auto opt = socially_optimal_allocation(q, s, SeparationMode::fcfs_compatible);
  CHECK(opt.argmin_set ==
        std::vector<Allocation>{al(2, 7), al(3, 8), al(7, 2), al(8, 3)});
  CHECK_FALSE(is_feasible(s, opt.argmin_set[0]));
}

TEST_CASE("selection picks the cost-minimal equilibrium allocation") {
  Scenario s = igame::testing::s1();
  auto sel = select_social_equilibrium(q, s, nash_oracle(q, s));
  CHECK(sel.reports == ReportPair{tick(7), tick(8)});
  REQUIRE(sel.lottery.size() == 1);
  CHECK(sel.lottery[0].alloc == al(7, 12));
  CHECK(sel.social == CostValue::from_exact(Rat(5)));
  CHECK(sel.diag.achieved_optimal);
  CHECK(sel.diag.epsilon_half_ticks == 0);
  CHECK(sel.diag.sigma_half_ticks == 2);
  CHECK(sel.diag.first_passer == 1);
}

TEST_CASE("selection diagnostics when the optimum is out of reach") {
  Scenario s = igame::testing::s2();
  auto sel = select_social_equilibrium(q, s, nash_oracle(q, s));
  CHECK(sel.reports == ReportPair{tick(9), tick(10)});
  CHECK(sel.social == CostValue::from_exact(Rat(17)));
  CHECK_FALSE(sel.diag.achieved_optimal);
  // (9,14) is the (8,13) optimum shifted one tick late.
  CHECK(sel.diag.epsilon_half_ticks == 2);
  CHECK(sel.diag.sigma_half_ticks == 4);
  CHECK(sel.diag.first_passer == 1);

  Scenario later_first = igame::testing::s3();
  auto sel3 = select_social_equilibrium(q, later_first,
                                        nash_oracle(q, later_first));
  CHECK(sel3.social == CostValue::from_exact(Rat(20)));
  CHECK_FALSE(sel3.diag.epsilon_half_ticks);  // not a translate of (7,12)
  CHECK(sel3.diag.first_passer == 2);
}

TEST_CASE("tie lottery selection reports no first passer") {
  Scenario s = igame::testing::tiny();
  auto sel = select_social_equilibrium(q, s, nash_oracle(q, s));
  CHECK(sel.reports == ReportPair{tick(2), tick(2)});
  CHECK(sel.lottery.size() == 2);
  CHECK(sel.diag.first_passer == 0);
  CHECK(sel.diag.achieved_optimal);
}

TEST_CASE("selection formula rows on the standing examples") {
  Theorem1Result r1 = closed_form_theorem1(igame::testing::s2());
  CHECK(r1.row == 1);
  CHECK(r1.allocation == al(10, 15));  // misses the achievable (9,14)
  CHECK_FALSE(r1.optimum_achieved);

  Theorem1Result r2 = closed_form_theorem1(igame::testing::s3());
  CHECK(r2.row == 2);
  CHECK(r2.allocation == al(13, 8));

  Theorem1Result r3 = closed_form_theorem1(make_scenario(0, 12, 4, 7, 8, 9, 10));
  CHECK(r3.row == 3);
  CHECK(r3.allocation == al(7, 12));
  CHECK(r3.optimum_achieved);

  Theorem1Result r0 = closed_form_theorem1(make_scenario(0, 12, 4, 0, 4, 0, 10));
  CHECK(r0.row == 0);
  CHECK_FALSE(r0.applicable());
}

TEST_CASE("crosscheck archives known formula defects and nothing else") {
  CrosscheckReport c1 = crosscheck(q, igame::testing::s1());
  REQUIRE(c1.rows.size() == 1);  // the bare-crossing planner row only
  CHECK(c1.rows[0].kind == CompareKind::social_cases);
  CHECK(c1.rows[0].detail == "case=ii mode=eq4");
  CHECK_FALSE(c1.theorem1_compared);  // optimum reached without the formula
  CHECK(c1.theorem1_row == 3);

  CrosscheckReport c2 = crosscheck(q, igame::testing::s2());
  CHECK(c2.theorem1_compared);
  CHECK_FALSE(c2.theorem1_agreed);
  bool found = false;
  for (const Discrepancy& d : c2.rows)
    if (d.kind == CompareKind::theorem1 && d.detail == "row=1") found = true;
  CHECK(found);

  CrosscheckReport c3 = crosscheck(q, igame::testing::s3());
  CHECK(c3.theorem1_compared);
  CHECK(c3.theorem1_agreed);
  CHECK(c3.theorem1_row == 2);

  CrosscheckReport c5 = crosscheck(q, make_scenario(0, 12, 4, 7, 8, 9, 10));
  CHECK(c5.theorem1_compared);
  CHECK(c5.theorem1_agreed);
  CHECK(c5.theorem1_row == 3);
}

TEST_CASE("formula rows outside the planner domain are tagged") {
  // d = (0, 2), dt = 4: the even-gap split lands below the search floor.
  Scenario s = make_scenario(0, 12, 4, 0, 0, 0, 2);
  CrosscheckReport rep = crosscheck(q, s);
  bool tagged = false;
  for (const Discrepancy& d : rep.rows)
    if (d.detail == "case=ii-offgrid mode=fcfs") tagged = true;
  CHECK(tagged);
}

TEST_CASE("equilibrium allocation listing follows report order") {
  Scenario s = igame::testing::s1();
  auto entries = equilibrium_allocations(s, nash_oracle(q, s));
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].reports == ReportPair{tick(6), tick(7)});
  CHECK(entries[0].lottery[0].alloc == al(6, 11));
  CHECK(entries[1].reports == ReportPair{tick(7), tick(8)});
}
