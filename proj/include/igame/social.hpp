#pragma once

#include <optional>
#include <vector>

#include "igame/discrepancy.hpp"
#include "igame/equilibrium.hpp"
#include "igame/fcfs.hpp"

namespace igame {

// Minimum spacing imposed on the planner's allocation search.
// fcfs_compatible uses the spacing every protocol outcome actually has
// (crossing plus one tick); bare_crossing uses the bare crossing duration.
enum class SeparationMode { fcfs_compatible, bare_crossing };

std::string to_string(SeparationMode mode);

struct SociallyOptimalAllocation {
  // Canonical planner answer. Equal desired times yield the fair coin over
  // the two mirrored minimizers; otherwise a single branch.
  AllocationLottery lottery;
  // Every cost-minimizing feasible pair (brute force), sorted.
  std::vector<Allocation> argmin_set;
  CostValue cost;  // expected cost of the lottery
  SeparationMode mode;
};

// Exhaustive planner optimum over whole-tick pairs in
// [lower, upper + crossing + tick], both orderings.
SociallyOptimalAllocation socially_optimal_allocation(const CostModel& model,
                                                      const Scenario& s,
                                                      SeparationMode mode);

// The three-case planner formulas, transcribed literally (equal desired
// times -> mirrored coin; even gap -> deterministic split; odd gap -> the
// b'-coin rounding formula, whose branches are knowingly lopsided). The
// argmin_set field carries the formula branches. No-conflict scenarios
// return the truthful pair.
SociallyOptimalAllocation closed_form_social_cases(const CostModel& model,
                                                   const Scenario& s);

struct AllocationSetEntry {
  ReportPair reports;
  AllocationLottery lottery;
};

// FCFS image of an equilibrium set, in report order.
std::vector<AllocationSetEntry> equilibrium_allocations(
    const Scenario& s, const EquilibriumSet& eqs);

struct SelectionDiagnostics {
  // Whole-pair half-tick shift from the nearest brute-force argmin member,
  // when the selected allocation is a translate of one; signed.
  std::optional<long long> epsilon_half_ticks;
  // Half-separation between desired and ideal times for conflict scenarios:
  // (crossing - desired gap) / 2, in half-ticks.
  long long sigma_half_ticks = 0;
  // 1 or 2 for a deterministic selection, 0 for a tie lottery.
  int first_passer = 0;
  bool achieved_optimal = false;
};

struct SelectedEquilibrium {
  ReportPair reports;
  AllocationLottery lottery;
  CostValue social;
  SelectionDiagnostics diag;
};

// Socially optimal equilibrium selection: minimize expected social cost over
// the given equilibrium set; break exact ties by distance to the canonical
// planner optimum, then lexicographically by reports. The set must be
// non-empty.
SelectedEquilibrium select_social_equilibrium(const CostModel& model,
                                              const Scenario& s,
                                              const EquilibriumSet& eqs);

struct Theorem1Result {
  // 1 = equal desired times, 2 = late-riser case (role j both later-desired
  // and earlier-ready, squeezed past the half-crossing line), 3 = otherwise.
  // 0 = no-conflict scenario, formula not applicable.
  int row = 0;
  std::optional<Allocation> allocation;  // formula output, physical order
  bool optimum_achieved = false;   // selection attains the planner optimum
  bool multiple_equilibria = false;

  bool applicable() const { return row != 0; }
};

// Selection formula rows, evaluated literally, with oracle-derived context
// flags. The convenience overload runs the oracle and planner search
// internally with the quadratic model (the argmin set does not depend on the
// cost model, so this loses no generality).
Theorem1Result closed_form_theorem1(const Scenario& s);
Theorem1Result closed_form_theorem1(const CostModel& model, const Scenario& s,
                                    const EquilibriumSet& oracle,
                                    const SociallyOptimalAllocation& optimum);

struct CrosscheckReport {
  std::vector<Discrepancy> rows;
  // Context for the selection-formula comparison on this scenario.
  bool theorem1_compared = false;
  bool theorem1_agreed = false;
  int theorem1_row = 0;

  bool clean() const { return rows.empty(); }
};

// Closed forms vs brute force for one scenario: the planner-case formulas
// against the exhaustive optimum under both separation modes, and the
// selection formula against the oracle-set selection. A formula that merely
// skips a scenario where the optimum is reachable is not a discrepancy.
CrosscheckReport crosscheck(const CostModel& model, const Scenario& s);

}  // namespace igame
