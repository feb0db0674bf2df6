#pragma once

#include <optional>
#include <string>
#include <vector>

#include "igame/fcfs.hpp"
#include "igame/social.hpp"

namespace igame {

struct ReportBranch {
  Rat prob;
  ReportPair reports;

  bool operator==(const ReportBranch&) const = default;
};

// Probability-weighted action assignment; sorted by reports, unique.
using ReportLottery = std::vector<ReportBranch>;

std::string format_report_lottery(const ReportLottery& l);

// How the direct mechanism picks the action pair for a reported scenario.
enum class MechanismSource { table1, oracle_selection };

std::string to_string(MechanismSource source);

struct Table1Assignment {
  ReportLottery lottery;
  CaseLabel label;
  int row = 0;        // 1-based row within the case's ladder
  bool on_grid = true; // false when a ladder row emits off-grid reports
};

// The socially-optimal-equilibrium action table, transcribed ladder by
// ladder. Total: exactly one row fires for every valid scenario. Near the
// grid's lower edge the equal-desired ladder can prescribe reports below the
// grid; such assignments are returned verbatim with on_grid = false.
Table1Assignment table1_assign(const Scenario& s);

struct MechanismOutcome {
  MechanismSource source;
  ReportLottery reports;
  AllocationLottery allocation;  // flattened over assignment and tie coins
  CaseLabel label;
  bool on_grid = true;  // false: assignment left the grid, no allocation
};

// Direct mechanism: agents report their types, the mechanism plays the
// socially optimal equilibrium actions of the reported game.
MechanismOutcome run_direct_mechanism(const Scenario& reported,
                                      MechanismSource source);

struct SPViolation {
  int agent;
  AgentProfile claim;      // the profitable misreport
  // Expected costs against the agent's true type; no truthful cost when the
  // truthful outcome itself is infeasible for the agent.
  std::optional<CostValue> truthful_cost;
  CostValue deviating_cost;
};

struct SPReport {
  std::vector<SPViolation> rows;
  // Truthful run prescribed off-grid reports; nothing to compare against.
  bool truthful_malformed = false;

  bool strategy_proof() const { return rows.empty() && !truthful_malformed; }
};

// Exhaustive misreport search for both agents: every (earliest, desired)
// claim on the grid with earliest <= desired, opponent truthful. Outcomes
// are costed against the deviator's true desired time, and any outcome with
// a branch below the deviator's true earliest time is discarded as
// unplayable. Lists every strict improvement.
SPReport verify_strategy_proofness(const CostModel& model,
                                   const Scenario& true_scenario,
                                   MechanismSource source);

// Same search for the naive protocol without a mechanism: each agent reports
// a single desired passing time straight into FCFS. Misreports range over
// the grid; the earliest field of a violation row echoes the true value.
SPReport verify_baseline_sp(const CostModel& model,
                            const Scenario& true_scenario);

// Consistency probe between the action table and the selection formula:
// where the selection formula was compared against the oracle and agreed,
// the FCFS image of the table's assignment must reproduce the same
// allocation. Returns a discrepancy row when it does not, nullopt otherwise
// (including when the comparison is not applicable).
std::optional<Discrepancy> table1_consistency(const Scenario& s,
                                              const Table1Assignment& assign,
                                              const CrosscheckReport& cross);

}  // namespace igame
