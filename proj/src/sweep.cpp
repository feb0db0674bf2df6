#include "igame/sweep.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "igame/discrepancy.hpp"
#include "igame/equilibrium.hpp"

namespace igame {

bool SweepSummary::ok() const {
  return prop1_failures == 0 && soundness_violations == 0 &&
         theorem1_row23_mismatches == 0 && table1_mismatches == 0 &&
         argmin_variance == 0 && case_ii_failures == 0;
}

namespace {

TickRange clip(const std::optional<TickRange>& r, long long lo, long long hi) {
  if (!r) return {lo, hi};
  return {std::max(r->lo, lo), std::min(r->hi, hi)};
}

long long profile_count(const SweepSpec& spec) {
  TickRange e1 = clip(spec.e1, spec.theta_min, spec.theta_max);
  TickRange d1 = clip(spec.d1, spec.theta_min, spec.theta_max);
  TickRange e2 = clip(spec.e2, spec.theta_min, spec.theta_max);
  TickRange d2 = clip(spec.d2, spec.theta_min, spec.theta_max);
  long long n1 = 0, n2 = 0;
  for (long long e = e1.lo; e <= e1.hi; ++e)
    for (long long d = d1.lo; d <= d1.hi; ++d)
      if (e <= d) ++n1;
  for (long long e = e2.lo; e <= e2.hi; ++e)
    for (long long d = d2.lo; d <= d2.hi; ++d)
      if (e <= d) ++n2;
  return n1 * n2;
}

std::string spec_header(const SweepSpec& spec) {
  std::ostringstream os;
  os << "spec | delta=" << spec.delta_units << " theta=[" << spec.theta_min
     << "," << spec.theta_max << "] dt=";
  for (size_t n = 0; n < spec.dt_ticks.size(); ++n)
    os << (n ? "," : "") << spec.dt_ticks[n];
  os << " cost=";
  for (size_t n = 0; n < spec.models.size(); ++n)
    os << (n ? "," : "") << spec.models[n].name();
  auto range = [&](const char* k, const std::optional<TickRange>& r) {
    TickRange c = clip(r, spec.theta_min, spec.theta_max);
    os << " " << k << "=" << c.lo << ".." << c.hi;
  };
  range("e1", spec.e1);
  range("d1", spec.d1);
  range("e2", spec.e2);
  range("d2", spec.d2);
  os << " sp=" << (spec.run_sp ? "on" : "off");
  if (spec.run_sp) os << " sp_source=" << to_string(spec.sp_source);
  return os.str();
}

std::string cost_str(const std::optional<CostValue>& c) {
  return c ? c->str() : "inf";
}

}  // namespace

long long sweep_cardinality(const SweepSpec& spec) {
  return static_cast<long long>(spec.dt_ticks.size()) * profile_count(spec);
}

SweepResult run_sweep(const SweepSpec& spec) {
  if (spec.models.empty())
    throw std::runtime_error("sweep: at least one cost model is required");
  for (long long dt : spec.dt_ticks)
    if (dt <= 0 || dt % 2 != 0)
      throw std::runtime_error(
          "sweep: crossing durations must be positive even tick counts");
  const long long cardinality = sweep_cardinality(spec);
  if (cardinality > spec.max_scenarios) {
    std::ostringstream os;
    os << "sweep: cardinality " << cardinality << " exceeds the limit "
       << spec.max_scenarios << " (raise max_scenarios to proceed)";
    throw std::runtime_error(os.str());
  }

  const TimeGrid grid(spec.delta_units, spec.theta_min, spec.theta_max);
  const TickRange e1r = clip(spec.e1, spec.theta_min, spec.theta_max);
  const TickRange d1r = clip(spec.d1, spec.theta_min, spec.theta_max);
  const TickRange e2r = clip(spec.e2, spec.theta_min, spec.theta_max);
  const TickRange d2r = clip(spec.d2, spec.theta_min, spec.theta_max);
  const CostModel& primary = spec.models[0];

  SweepResult result;
  SweepSummary& sum = result.summary;
  std::ostringstream out;
  out << spec_header(spec) << "\n";

  for (long long dt : spec.dt_ticks) {
    for (long long e1 = e1r.lo; e1 <= e1r.hi; ++e1)
      for (long long d1 = d1r.lo; d1 <= d1r.hi; ++d1) {
        if (e1 > d1) continue;
        for (long long e2 = e2r.lo; e2 <= e2r.hi; ++e2)
          for (long long d2 = d2r.lo; d2 <= d2r.hi; ++d2) {
            if (e2 > d2) continue;
            Scenario s(grid, dt * kHalfTicksPerTick,
                       {GridTime::from_ticks(e1), GridTime::from_ticks(d1)},
                       {GridTime::from_ticks(e2), GridTime::from_ticks(d2)});
            ++sum.scenarios;
            const std::string key = scenario_key(s);
            const CaseLabel label = classify(s).label;
            std::vector<std::string> drows;
            std::vector<std::string> vrows;

            const EquilibriumSet closed = closed_form_equilibria(s);
            const EquilibriumSet oracle0 = nash_oracle(primary, s);
            if (oracle0.pairs.empty()) {
              ++sum.prop1_failures;
              drows.push_back(
                  format_discrepancy({CompareKind::lemma_soundness, key, label,
                                      "oracle-empty model=" + primary.name(),
                                      "-", "-", "empty", "-"}));
            }
            long long gaps = 0;
            for (ReportPair p : oracle0.pairs)
              if (!closed.contains(p)) ++gaps;
            sum.completeness_gaps += gaps;

            bool model_diff = false;
            for (size_t mi = 0; mi < spec.models.size(); ++mi) {
              const CostModel& m = spec.models[mi];
              const EquilibriumSet& om =
                  mi == 0 ? oracle0 : nash_oracle(m, s);
              for (ReportPair p : closed.pairs) {
                if (om.contains(p)) continue;
                ++sum.soundness_violations;
                drows.push_back(format_discrepancy(
                    {CompareKind::lemma_soundness, key, label,
                     "model=" + m.name(), format_pair(p.r1, p.r2),
                     expected_social_cost(m, s, fcfs_allocate(s, p)).str(),
                     "rejected", "-"}));
              }
              if (mi > 0 && om.pairs != oracle0.pairs) model_diff = true;
            }
            if (model_diff) ++sum.oracle_model_diffs;

            const SociallyOptimalAllocation opt0 = socially_optimal_allocation(
                primary, s, SeparationMode::fcfs_compatible);
            for (size_t mi = 1; mi < spec.models.size(); ++mi) {
              SociallyOptimalAllocation om = socially_optimal_allocation(
                  spec.models[mi], s, SeparationMode::fcfs_compatible);
              if (om.argmin_set == opt0.argmin_set) continue;
              ++sum.argmin_variance;
              std::ostringstream a0, am;
              for (const Allocation& a : opt0.argmin_set)
                a0 << format_allocation(a);
              for (const Allocation& a : om.argmin_set)
                am << format_allocation(a);
              drows.push_back(format_discrepancy(
                  {CompareKind::social_cases, key, label,
                   "argmin-variance model=" + spec.models[mi].name(), a0.str(),
                   opt0.cost.str(), am.str(), om.cost.str()}));
            }

            const CrosscheckReport rep = crosscheck(primary, s);
            for (const Discrepancy& d : rep.rows) {
              if (d.kind == CompareKind::social_cases &&
                  d.detail.find("mode=fcfs") == std::string::npos)
                continue;
              drows.push_back(format_discrepancy(d));
              if (d.kind == CompareKind::social_cases) {
                ++sum.social_case_rows;
                if (d.detail == "case=ii mode=fcfs") ++sum.case_ii_failures;
              } else if (d.kind == CompareKind::theorem1) {
                if (rep.theorem1_row >= 2)
                  ++sum.theorem1_row23_mismatches;
                else
                  ++sum.theorem1_row1_rows;
              }
            }
            if (rep.theorem1_row != 0) {
              if (!rep.theorem1_compared)
                ++sum.theorem1_skipped;
              else if (rep.theorem1_agreed)
                ++sum.theorem1_agreements;
            }

            const Table1Assignment assign = table1_assign(s);
            if (!assign.on_grid) ++sum.table1_offgrid;
            if (auto d = table1_consistency(s, assign, rep)) {
              ++sum.table1_mismatches;
              drows.push_back(format_discrepancy(*d));
            }

            std::string sp_field = "-";
            if (spec.run_sp) {
              SPReport spr =
                  verify_strategy_proofness(primary, s, spec.sp_source);
              if (spr.truthful_malformed) {
                ++sum.sp_malformed;
                sp_field = "x";
              } else {
                sp_field = std::to_string(spr.rows.size());
                sum.sp_improvements +=
                    static_cast<long long>(spr.rows.size());
                for (int agent = 1; agent <= 2; ++agent) {
                  const SPViolation* best = nullptr;
                  long long count = 0;
                  for (const SPViolation& v : spr.rows) {
                    if (v.agent != agent) continue;
                    ++count;
                    if (!best || v.deviating_cost < best->deviating_cost)
                      best = &v;
                  }
                  if (!best) continue;
                  ++sum.sp_agent_cases;
                  std::ostringstream os;
                  os << "V | " << key << " | agent=" << agent
                     << " improvements=" << count << " | claim e="
                     << format_ticks(best->claim.earliest) << " d="
                     << format_ticks(best->claim.desired) << " | truthful "
                     << cost_str(best->truthful_cost) << " | deviating "
                     << best->deviating_cost.str();
                  vrows.push_back(os.str());
                }
              }
            }

            out << "S | " << key << " | " << to_string(label) << " | closed="
                << closed.pairs.size() << " oracle=" << oracle0.pairs.size()
                << " gaps=" << gaps << " | th row=" << rep.theorem1_row
                << " cmp=" << (rep.theorem1_compared ? 1 : 0)
                << " agr=" << (rep.theorem1_agreed ? 1 : 0)
                << " | sp=" << sp_field << "\n";
            for (const std::string& r : drows) out << "D | " << r << "\n";
            for (const std::string& r : vrows) out << r << "\n";
          }
      }
  }

  out << "summary\n" << format_summary(sum);
  result.archive = out.str();
  return result;
}

std::string format_summary(const SweepSummary& s) {
  std::ostringstream os;
  os << "scenarios = " << s.scenarios << "\n"
     << "prop1_failures = " << s.prop1_failures << "\n"
     << "soundness_violations = " << s.soundness_violations << "\n"
     << "theorem1_row23_mismatches = " << s.theorem1_row23_mismatches << "\n"
     << "table1_mismatches = " << s.table1_mismatches << "\n"
     << "argmin_variance = " << s.argmin_variance << "\n"
     << "case_ii_failures = " << s.case_ii_failures << "\n"
     << "completeness_gaps = " << s.completeness_gaps << "\n"
     << "oracle_model_diffs = " << s.oracle_model_diffs << "\n"
     << "social_case_rows = " << s.social_case_rows << "\n"
     << "theorem1_row1_rows = " << s.theorem1_row1_rows << "\n"
     << "theorem1_agreements = " << s.theorem1_agreements << "\n"
     << "theorem1_skipped = " << s.theorem1_skipped << "\n"
     << "table1_offgrid = " << s.table1_offgrid << "\n"
     << "sp_agent_cases = " << s.sp_agent_cases << "\n"
     << "sp_improvements = " << s.sp_improvements << "\n"
     << "sp_malformed = " << s.sp_malformed << "\n";
  return os.str();
}

}  // namespace igame
