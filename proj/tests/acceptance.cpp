// Acceptance gate. Each criterion prints exactly one line:
//   <n> | <name> | PASS/FAIL | <measured detail>
// The process exits 0 only if every criterion passes. Everything here is
// computed on the spot; no golden numbers enter without a brute-force
// counterpart in the same run.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "igame/discrepancy.hpp"
#include "igame/equilibrium.hpp"
#include "igame/fcfs.hpp"
#include "igame/mechanism.hpp"
#include "igame/social.hpp"
#include "igame/sweep.hpp"

using namespace igame;

namespace {

const CostModel q = CostModel::quadratic();

Scenario make(long long lo, long long hi, long long dt, long long e1,
              long long d1, long long e2, long long d2) {
  TimeGrid grid(1, lo, hi);
  return Scenario(grid, dt * kHalfTicksPerTick,
                  {GridTime::from_ticks(e1), GridTime::from_ticks(d1)},
                  {GridTime::from_ticks(e2), GridTime::from_ticks(d2)});
}

Scenario s1() { return make(0, 12, 4, 0, 8, 0, 10); }
Scenario s2() { return make(0, 12, 4, 9, 10, 10, 10); }
Scenario s3() { return make(0, 12, 4, 9, 9, 5, 10); }
Scenario tiny() { return make(0, 6, 2, 0, 3, 0, 3); }

GridTime tk(long long t) { return GridTime::from_ticks(t); }

int failures = 0;

void report(int n, const std::string& name, bool pass,
            const std::string& detail) {
  std::cout << n << " | " << name << " | " << (pass ? "PASS" : "FAIL")
            << " | " << detail << "\n";
  if (!pass) ++failures;
}

// 1: protocol contract over every report pair on the standard grid.
void criterion_fcfs() {
  long long pairs = 0, violations = 0;
  for (long long dt : {2, 4}) {
    Scenario s = make(0, 12, dt, 0, 6, 0, 6);
    const long long spacing = s.spacing();
    for (GridTime r1 : s.grid().enumerate())
      for (GridTime r2 : s.grid().enumerate()) {
        ++pairs;
        AllocationLottery l = fcfs_allocate(s, {r1, r2});
        bool ok = true;
        for (const AllocationBranch& b : l)
          ok &= abs_half_ticks(b.alloc.t1 - b.alloc.t2) >= spacing &&
                b.alloc.t1 >= r1 && b.alloc.t2 >= r2;
        if (r1 < r2)
          ok &= l.size() == 1 && l[0].alloc.t1 == r1;
        else if (r2 < r1)
          ok &= l.size() == 1 && l[0].alloc.t2 == r2;
        else
          ok &= l.size() == 2 && l[0].prob == Rat(1, 2) &&
                l[1].prob == Rat(1, 2) && l[0].alloc.t1 == l[1].alloc.t2 &&
                l[0].alloc.t2 == l[1].alloc.t1;
        if (!ok) ++violations;
      }
  }
  std::ostringstream d;
  d << pairs << " report pairs, " << violations << " violations";
  report(1, "fcfs-contract", violations == 0, d.str());
}

// 4: the four standing examples, exact equality, oracle-confirmed.
void criterion_worked() {
  auto eq = [](const Scenario& s, std::vector<ReportPair> want) {
    EquilibriumSet closed = closed_form_equilibria(s);
    EquilibriumSet oracle = nash_oracle(q, s);
    return closed.pairs == want && oracle.pairs == want;
  };
  bool ok1 = eq(s1(), {{tk(6), tk(7)}, {tk(7), tk(8)}});
  AllocationLottery a1a = fcfs_allocate(s1(), {tk(6), tk(7)});
  AllocationLottery a1b = fcfs_allocate(s1(), {tk(7), tk(8)});
  ok1 = ok1 && a1a.size() == 1 && a1a[0].alloc == Allocation{tk(6), tk(11)} &&
        a1b.size() == 1 && a1b[0].alloc == Allocation{tk(7), tk(12)};

  bool ok2 = eq(s2(), {{tk(9), tk(10)}});
  AllocationLottery a2 = fcfs_allocate(s2(), {tk(9), tk(10)});
  ok2 = ok2 && a2.size() == 1 && a2[0].alloc == Allocation{tk(9), tk(14)};

  bool ok3 = eq(s3(), {{tk(9), tk(8)}});
  AllocationLottery a3 = fcfs_allocate(s3(), {tk(9), tk(8)});
  ok3 = ok3 && a3.size() == 1 && a3[0].alloc == Allocation{tk(13), tk(8)} &&
        a3[0].alloc.t2 < a3[0].alloc.t1;  // the later desirer passes first

  bool ok4 = eq(tiny(), {{tk(2), tk(2)}});

  std::ostringstream d;
  d << "s1 " << (ok1 ? "ok" : "BAD") << ", s2 " << (ok2 ? "ok" : "BAD")
    << ", s3 " << (ok3 ? "ok" : "BAD") << ", tiny " << (ok4 ? "ok" : "BAD");
  report(4, "worked-scenarios", ok1 && ok2 && ok3 && ok4, d.str());
}

// 5 (first half): the equal-desired fairness lottery, exactly.
bool check_tie_lottery(std::string& detail) {
  Scenario s = make(0, 12, 4, 0, 10, 0, 10);
  AllocationLottery want = {{Rat(1, 2), {tk(8), tk(13)}},
                           {Rat(1, 2), {tk(13), tk(8)}}};
  auto cases = closed_form_social_cases(q, s);
  auto opt = socially_optimal_allocation(q, s, SeparationMode::fcfs_compatible);
  bool ok = cases.lottery == want && opt.lottery == want &&
            cases.cost == opt.cost;
  detail = "tie coin " + format_lottery(cases.lottery) +
           (ok ? " reproduced" : " WRONG");
  return ok;
}

// 6 (scenario part): mandatory members of the agreement set.
bool check_selection_members(std::string& detail) {
  CrosscheckReport c3 = crosscheck(q, s3());
  CrosscheckReport c5 = crosscheck(q, make(0, 12, 4, 7, 8, 9, 10));
  bool ok = c3.theorem1_compared && c3.theorem1_agreed &&
            c3.theorem1_row == 2 && c5.theorem1_compared &&
            c5.theorem1_agreed && c5.theorem1_row == 3;
  detail = ok ? "rows 2 and 3 agree on the mandatory members"
              : "mandatory member disagrees";
  return ok;
}

// 7 (baseline part): the tie manipulation with exact costs.
bool check_baseline(std::string& detail) {
  SPReport rep = verify_baseline_sp(q, s1());
  bool ok = rep.rows.size() == 1;
  if (ok) {
    const SPViolation& v = rep.rows[0];
    ok = v.agent == 2 && v.claim.desired == tk(8) && v.truthful_cost &&
         *v.truthful_cost == CostValue::from_exact(Rat(9)) &&
         v.deviating_cost == CostValue::from_exact(Rat(13, 2));
  }
  detail = ok ? "misreport 8 improves 9 -> 13/2, uniquely"
              : "expected single tie manipulation not reproduced";
  return ok;
}

int run_all() {
  criterion_fcfs();

  // The standard sweep drives criteria 2, 3, 5, 6 and 8. Run it twice for
  // the determinism check and reuse the first pass everywhere else.
  SweepSpec spec;
  spec.dt_ticks = {2, 4};
  spec.models = {CostModel::quadratic(), CostModel::power_int(4)};
  SweepResult first = run_sweep(spec);
  SweepResult second = run_sweep(spec);
  const SweepSummary& sum = first.summary;
  const std::string& archive = first.archive;

  {
    std::ostringstream d;
    d << sum.scenarios << " scenarios, " << sum.prop1_failures
      << " empty oracle sets";
    report(2, "oracle-nonempty", sum.prop1_failures == 0, d.str());
  }
  {
    std::ostringstream d;
    d << sum.soundness_violations << " rejected pairs under quadratic and "
      << spec.models[1].name();
    report(3, "closed-form-soundness", sum.soundness_violations == 0, d.str());
  }

  criterion_worked();

  {
    std::string tie_detail;
    bool tie_ok = check_tie_lottery(tie_detail);
    bool ok = tie_ok && sum.case_ii_failures == 0 && sum.argmin_variance == 0;
    std::ostringstream d;
    d << tie_detail << "; even-gap failures " << sum.case_ii_failures
      << "; argmin variance " << sum.argmin_variance;
    report(5, "planner-optimum", ok, d.str());
  }

  {
    std::string member_detail;
    bool members_ok = check_selection_members(member_detail);
    bool archive_has_equal_desired =
        archive.find("D | theorem1 | dt=4 e1=9 d1=10 e2=10 d2=10") !=
        std::string::npos;
    bool archive_has_odd_gap =
        archive.find("D | social-cases | dt=4 e1=0 d1=8 e2=0 d2=9 | Lemma3 | "
                     "case=iii mode=fcfs") != std::string::npos;
    bool no_foreign_kinds =
        archive.find("D | lemma-soundness") == std::string::npos &&
        archive.find("D | table1") == std::string::npos;
    bool ok = sum.theorem1_row23_mismatches == 0 &&
              sum.table1_mismatches == 0 && members_ok &&
              sum.theorem1_row1_rows > 0 && archive_has_equal_desired &&
              archive_has_odd_gap && no_foreign_kinds;
    std::ostringstream d;
    d << "rows 2-3 mismatches " << sum.theorem1_row23_mismatches << "; "
      << member_detail << "; known defects archived "
      << (archive_has_equal_desired && archive_has_odd_gap ? "yes" : "NO")
      << "; foreign kinds " << (no_foreign_kinds ? "none" : "PRESENT");
    report(6, "selection-formula", ok, d.str());
  }

  {
    std::string base_detail;
    bool base_ok = check_baseline(base_detail);

    // Mechanism mode over the short-crossing grid: the count is reported,
    // archived with replayable rows, and replayed here for one scenario.
    SweepSpec short_spec;
    short_spec.dt_ticks = {2};
    short_spec.models = {CostModel::quadratic()};
    SweepResult short_run = run_sweep(short_spec);
    long long count = short_run.summary.sp_improvements;
    bool archived = count == 0 ||
                    short_run.archive.find("\nV | ") != std::string::npos;
    Scenario bait = make(0, 12, 2, 0, 5, 0, 7);
    SPReport replay = verify_strategy_proofness(q, bait, MechanismSource::table1);
    std::ostringstream vrow;
    vrow << "V | " << scenario_key(bait) << " | agent=2 improvements="
         << replay.rows.size();
    bool replayable = short_run.archive.find(vrow.str()) != std::string::npos;
    bool ok = base_ok && archived && replayable;
    std::ostringstream d;
    d << base_detail << "; short-crossing improvements " << count
      << " archived and replayable "
      << (archived && replayable ? "yes" : "NO");
    report(7, "misreport-checker", ok, d.str());
  }

  {
    bool same = first.archive == second.archive;
    std::ostringstream d;
    d << "two runs, " << first.archive.size() << " bytes each, "
      << (same ? "byte-identical" : "DIFFER");
    report(8, "determinism", same, d.str());
  }

  std::cout << "overall | " << (failures == 0 ? "PASS" : "FAIL") << " | "
            << (8 - failures) << "/8 criteria\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main() { return run_all(); }
