#pragma once

#include <optional>
#include <string>
#include <vector>

#include "igame/fcfs.hpp"
#include "igame/payoff.hpp"
#include "igame/scenario.hpp"

namespace igame {

// Case taxonomy for a scenario, mirroring the closed-form equilibrium
// characterization. Exactly one label applies per scenario.
enum class CaseLabel {
  NoConflict,
  Lemma1,
  Lemma2,
  Lemma3,
  Lemma4Former,
  Lemma4Latter,
  Lemma5,
};

std::string to_string(CaseLabel label);

// Which physical agent plays role i (the earlier-desired agent; for equal
// desired times, the earlier-earliest one; full ties default to agent 1).
struct CaseInfo {
  CaseLabel label;
  int role_i;
  int role_j;
};

CaseInfo classify(const Scenario& s);

// A report is admissible against an opponent report when every allocation
// branch it can produce respects the acting agent's earliest time. The
// opponent's feasibility is not this agent's concern.
bool admissible(const Scenario& s, int agent, GridTime own_report,
                GridTime opp_report);

struct BestResponse {
  std::vector<GridTime> reports;  // all admissible cost minimizers, ascending
  CostValue cost;                 // the minimized expected cost
};

// Exhaustive best-response set of one agent to a fixed opponent report.
BestResponse best_responses(const CostModel& model, const Scenario& s,
                            int agent, GridTime opp_report);

enum class SetOrigin { closed_form, oracle };

struct EquilibriumSet {
  SetOrigin origin;
  std::vector<ReportPair> pairs;  // sorted by (r1, r2), unique
  // Populated only by the closed form in the one case family whose empty-set
  // fallback is claimed as an approximate equilibrium rather than an exact
  // one; never counted against the oracle.
  std::optional<ReportPair> eps_fallback;

  bool contains(ReportPair p) const;
};

// Brute-force pure-equilibrium search: every admissible pair where neither
// agent has an admissible deviation with strictly lower expected cost.
EquilibriumSet nash_oracle(const CostModel& model, const Scenario& s);

// Case-formula equilibrium sets, materialized on the report grid. Cost-model
// independent by construction.
EquilibriumSet closed_form_equilibria(const Scenario& s);

struct SoundnessReport {
  std::vector<ReportPair> unsound;  // closed-form pairs the oracle rejects
  std::vector<ReportPair> gaps;     // oracle pairs the closed form misses
  bool oracle_empty = false;

  bool clean() const { return unsound.empty() && !oracle_empty; }
};

SoundnessReport verify_soundness(const CostModel& model, const Scenario& s);

}  // namespace igame
