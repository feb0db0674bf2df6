#pragma once

#include <optional>
#include <string>
#include <vector>

#include "igame/mechanism.hpp"
#include "igame/payoff.hpp"
#include "igame/social.hpp"

namespace igame {

struct TickRange {
  long long lo = 0;
  long long hi = 0;  // inclusive
};

// Enumeration spec for a scenario sweep: one scenario per crossing duration
// and per profile tuple (e1 <= d1, e2 <= d2) within the ranges.
struct SweepSpec {
  long long delta_units = 1;
  long long theta_min = 0;
  long long theta_max = 12;
  std::vector<long long> dt_ticks;  // crossing durations, ticks, each even
  std::vector<CostModel> models;    // first entry is the primary model
  std::optional<TickRange> e1, d1, e2, d2;  // default: the whole grid
  long long max_scenarios = 1'000'000;
  bool run_sp = true;
  MechanismSource sp_source = MechanismSource::table1;
};

struct SweepSummary {
  long long scenarios = 0;
  // Expected-zero counters; any nonzero value fails the run.
  long long prop1_failures = 0;          // scenarios with an empty oracle set
  long long soundness_violations = 0;    // closed-form pairs the oracle rejects
  long long theorem1_row23_mismatches = 0;
  long long table1_mismatches = 0;
  long long argmin_variance = 0;         // argmin sets differ across models
  long long case_ii_failures = 0;        // even-gap formula not an argmin member
  // Informational counters.
  long long completeness_gaps = 0;       // oracle pairs outside the closed form
  long long oracle_model_diffs = 0;      // equilibrium sets differ across models
  long long social_case_rows = 0;        // archived planner-formula findings
  long long theorem1_row1_rows = 0;      // archived selection-formula findings
  long long theorem1_agreements = 0;
  long long theorem1_skipped = 0;        // optimum reachable, formula not needed
  long long table1_offgrid = 0;          // ladder prescribed off-grid reports
  long long sp_agent_cases = 0;   // (scenario, agent) with a strict improvement
  long long sp_improvements = 0;  // improving misreports in total
  long long sp_malformed = 0;     // truthful mechanism run left the grid

  bool ok() const;
};

struct SweepResult {
  SweepSummary summary;
  std::string archive;  // deterministic text: spec header, rows, summary
};

// Number of scenarios a SweepSpec enumerates (before any work is done).
long long sweep_cardinality(const SweepSpec& spec);

SweepResult run_sweep(const SweepSpec& spec);

std::string format_summary(const SweepSummary& s);

// Sweep spec file: delta, theta_min, theta_max, dt = "2,4",
// cost = "quadratic,power:4", optional e1/d1/e2/d2 = "a..b", sp = on|off,
// sp_source. Same comment and error conventions as scenario files.
SweepSpec parse_sweep_text(const std::string& text);
SweepSpec load_sweep_file(const std::string& path);

}  // namespace igame
