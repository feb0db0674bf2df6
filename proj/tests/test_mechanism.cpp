#include <doctest.h>

#include "igame/mechanism.hpp"
#include "test_support.hpp"

using namespace igame;
using igame::testing::make_scenario;
using igame::testing::tick;

namespace {

const CostModel q = CostModel::quadratic();

ReportPair rp(long long a, long long b) { return {tick(a), tick(b)}; }

}  // namespace

TEST_CASE("action table rows for the standing examples") {
  Table1Assignment a1 = table1_assign(igame::testing::s1());
  CHECK(a1.label == CaseLabel::Lemma3);
  CHECK(a1.row == 2);
  CHECK(a1.on_grid);
  REQUIRE(a1.lottery.size() == 1);
  CHECK(a1.lottery[0].reports == rp(7, 8));

  Table1Assignment a3 = table1_assign(igame::testing::s3());
  CHECK(a3.row == 2);
  REQUIRE(a3.lottery.size() == 1);
  CHECK(a3.lottery[0].reports == rp(9, 8));  // the later desirer goes first

  Table1Assignment at = table1_assign(igame::testing::tiny());
  CHECK(at.row == 1);
  REQUIRE(at.lottery.size() == 1);
  CHECK(at.lottery[0].reports == rp(2, 2));
}

TEST_CASE("equal-desired table row can assign one agent an impossible slot") {
  // The table is transcribed as stated. Here it assigns (8,9) although
  // agent 1 cannot pass before 9; the misreport checker treats the
  // truthful outcome as unplayable for that agent.
  Table1Assignment a2 = table1_assign(igame::testing::s2());
  CHECK(a2.label == CaseLabel::Lemma1);
  CHECK(a2.row == 2);
  REQUIRE(a2.lottery.size() == 1);
  CHECK(a2.lottery[0].reports == rp(8, 9));
  AllocationLottery image =
      fcfs_allocate(igame::testing::s2(), a2.lottery[0].reports);
  CHECK_FALSE(lottery_feasible(igame::testing::s2(), image));
}

TEST_CASE("odd-gap rows assign the half-shifted coin") {
  Table1Assignment a = table1_assign(make_scenario(0, 12, 4, 0, 8, 0, 9));
  CHECK(a.row == 4);
  REQUIRE(a.lottery.size() == 2);
  CHECK(a.lottery[0] == ReportBranch{Rat(1, 2), rp(6, 7)});
  CHECK(a.lottery[1] == ReportBranch{Rat(1, 2), rp(7, 8)});
  CHECK(a.on_grid);
}

TEST_CASE("near the lower grid edge the table can leave the grid") {
  Table1Assignment a = table1_assign(make_scenario(0, 12, 4, 0, 1, 1, 1));
  CHECK_FALSE(a.on_grid);
  MechanismOutcome out = run_direct_mechanism(
      make_scenario(0, 12, 4, 0, 1, 1, 1), MechanismSource::table1);
  CHECK_FALSE(out.on_grid);
  CHECK(out.allocation.empty());
}

TEST_CASE("mechanism outcomes flatten assignment and tie coins") {
  MechanismOutcome out =
      run_direct_mechanism(igame::testing::s1(), MechanismSource::table1);
  CHECK(out.on_grid);
  REQUIRE(out.allocation.size() == 1);
  CHECK(out.allocation[0].alloc == Allocation{tick(7), tick(12)});

  MechanismOutcome tie =
      run_direct_mechanism(igame::testing::tiny(), MechanismSource::table1);
  REQUIRE(tie.allocation.size() == 2);
  CHECK(tie.allocation[0].prob == Rat(1, 2));

  MechanismOutcome sel =
      run_direct_mechanism(igame::testing::s1(), MechanismSource::oracle_selection);
  REQUIRE(sel.reports.size() == 1);
  CHECK(sel.reports[0].reports == rp(7, 8));
  CHECK(sel.allocation[0].alloc == Allocation{tick(7), tick(12)});
}

TEST_CASE("no-conflict profiles pass through truthfully and untouchably") {
  Scenario s = make_scenario(0, 12, 4, 0, 4, 0, 10);
  MechanismOutcome out = run_direct_mechanism(s, MechanismSource::table1);
  REQUIRE(out.reports.size() == 1);
  CHECK(out.reports[0].reports == rp(4, 10));
  CHECK(verify_strategy_proofness(q, s, MechanismSource::table1)
            .strategy_proof());
  CHECK(verify_baseline_sp(q, s).strategy_proof());
}

TEST_CASE("short-crossing tie bait: misreporting as a tie pays off") {
  Scenario s = make_scenario(0, 12, 2, 0, 5, 0, 7);
  SPReport rep = verify_strategy_proofness(q, s, MechanismSource::table1);
  CHECK_FALSE(rep.strategy_proof());
  CHECK(rep.rows.size() == 8);
  bool best_found = false;
  for (const SPViolation& v : rep.rows) {
    CHECK(v.agent == 2);  // only the later desirer gains here
    REQUIRE(v.truthful_cost);
    CHECK(*v.truthful_cost == CostValue::from_exact(Rat(1)));
    if (v.claim == AgentProfile{tick(5), tick(5)})
      best_found = v.deviating_cost == CostValue::from_exact(Rat(0));
  }
  CHECK(best_found);
}

TEST_CASE("baseline protocol: the tie manipulation on the standing example") {
  SPReport rep = verify_baseline_sp(q, igame::testing::s1());
  REQUIRE(rep.rows.size() == 1);
  const SPViolation& v = rep.rows[0];
  CHECK(v.agent == 2);
  CHECK(v.claim.desired == tick(8));  // match the rival and take the coin
  REQUIRE(v.truthful_cost);
  CHECK(*v.truthful_cost == CostValue::from_exact(Rat(9)));
  CHECK(v.deviating_cost == CostValue::from_exact(Rat(13, 2)));
}

TEST_CASE("table-vs-selection consistency holds where both are defined") {
  // Compared and agreed: the consistency probe runs and passes.
  Scenario late = make_scenario(0, 12, 4, 7, 8, 9, 10);
  CrosscheckReport cross = crosscheck(q, late);
  REQUIRE(cross.theorem1_compared);
  REQUIRE(cross.theorem1_agreed);
  CHECK_FALSE(table1_consistency(late, table1_assign(late), cross));

  // Not agreed: the probe is inapplicable and stays silent.
  CrosscheckReport c2 = crosscheck(q, igame::testing::s2());
  CHECK_FALSE(table1_consistency(igame::testing::s2(),
                                 table1_assign(igame::testing::s2()), c2));
}

TEST_CASE("report lottery formatting") {
  Table1Assignment a = table1_assign(make_scenario(0, 12, 4, 0, 8, 0, 9));
  CHECK(format_report_lottery(a.lottery) == "1/2:(6,7) 1/2:(7,8)");
  Table1Assignment b = table1_assign(igame::testing::s1());
  CHECK(format_report_lottery(b.lottery) == "(7,8)");
}
