#include "igame/mechanism.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace igame {

std::string format_report_lottery(const ReportLottery& l) {
  std::ostringstream os;
  bool first = true;
  for (const ReportBranch& b : l) {
    if (!first) os << " ";
    first = false;
    if (b.prob != Rat(1)) os << format_rat(b.prob) << ":";
    os << format_pair(b.reports.r1, b.reports.r2);
  }
  return os.str();
}

std::string to_string(MechanismSource source) {
  return source == MechanismSource::table1 ? "table1" : "oracle";
}

namespace {

GridTime max_t(GridTime a, GridTime b) { return a < b ? b : a; }
GridTime min_t(GridTime a, GridTime b) { return a < b ? a : b; }

}  // namespace

Table1Assignment table1_assign(const Scenario& s) {
  const CaseInfo ci = classify(s);
  const AgentProfile& pi = s.agent(ci.role_i);
  const AgentProfile& pj = s.agent(ci.role_j);
  const long long half = s.half_crossing();
  const long long cross = s.crossing();
  const TimeGrid& g = s.grid();

  // theta_star is the ideal first-passer report; a half-tick value when the
  // desired-time gap is an odd number of ticks.
  const GridTime theta_star =
      pi.desired - (cross - (pj.desired - pi.desired)) / 2;
  const bool star_on_grid = theta_star.is_whole_tick() &&
                            g.lower() <= theta_star && theta_star <= g.upper();

  Table1Assignment out;
  out.label = ci.label;
  auto physical = [&](GridTime ri, GridTime rj) {
    return ci.role_i == 1 ? ReportPair{ri, rj} : ReportPair{rj, ri};
  };
  auto deterministic = [&](int row, GridTime ri, GridTime rj) {
    out.row = row;
    out.lottery = {{Rat(1), physical(ri, rj)}};
  };
  // The two roundings of theta_star, each made the first report with the
  // second one tick behind.
  auto star_coin = [&](int row) {
    out.row = row;
    GridTime lo = theta_star - 1;
    GridTime hi = theta_star + 1;
    out.lottery = {{Rat(1, 2), physical(lo, lo + kTickSpan)},
                   {Rat(1, 2), physical(hi, hi + kTickSpan)}};
    std::sort(out.lottery.begin(), out.lottery.end(),
              [](const ReportBranch& a, const ReportBranch& b) {
                return a.reports < b.reports;
              });
  };
  // Shared else-if tail of the one-agent-first ladders.
  auto standard_tail = [&]() {
    if (star_on_grid) {
      GridTime r = max_t(theta_star, pi.earliest);
      deterministic(2, r, r + kTickSpan);
    } else if (theta_star + 1 <= pi.earliest) {
      deterministic(3, pi.earliest, pi.earliest + kTickSpan);
    } else {
      star_coin(4);
    }
  };

  switch (ci.label) {
    case CaseLabel::NoConflict:
      deterministic(1, pi.desired, pj.desired);
      break;
    case CaseLabel::Lemma1: {
      GridTime left = max_t(pi.earliest, pi.desired - half);
      GridTime right = max_t(pj.earliest, pi.desired - half);
      if (left == right) {
        deterministic(1, right, right);
      } else if (star_on_grid) {
        GridTime r = min_t(theta_star, pj.earliest);
        deterministic(2, r, r + kTickSpan);
      } else if (pj.earliest <= theta_star - 1) {
        deterministic(3, pj.earliest, pj.earliest + kTickSpan);
      } else {
        star_coin(4);
      }
      break;
    }
    case CaseLabel::Lemma2:
      if (max_t(pj.desired - cross, pi.earliest) == pi.desired)
        deterministic(1, pi.desired, pj.desired);
      else
        standard_tail();
      break;
    case CaseLabel::Lemma3:
      if (max_t(pi.earliest, pi.desired - half) ==
          max_t(pj.desired - half, pj.earliest))
        deterministic(1, max_t(pj.desired - half, pj.earliest),
                      max_t(pj.desired - half, pj.earliest));
      else
        standard_tail();
      break;
    case CaseLabel::Lemma4Former:
      if (max_t(pi.earliest, pi.desired - half) == pj.desired - half)
        deterministic(1, pj.desired - half, pj.desired - half);
      else
        standard_tail();
      break;
    case CaseLabel::Lemma4Latter:
      if (max_t(pj.earliest, pj.desired - half) == pi.earliest) {
        deterministic(1, pi.earliest, pi.earliest);
      } else {
        // Agent j reports first; its slot is the larger of its earliest time
        // and the half-crossing point before its desired time.
        GridTime bar = max_t(pj.desired - half, pj.earliest);
        deterministic(2, bar + kTickSpan, bar);
      }
      break;
    case CaseLabel::Lemma5:
      if (max_t(max_t(pj.desired - cross, pi.desired - half), pi.earliest) ==
          min_t(pj.desired - half, pi.desired))
        deterministic(1, min_t(pj.desired - half, pi.desired),
                      min_t(pj.desired - half, pi.desired));
      else
        standard_tail();
      break;
  }

  out.on_grid = std::all_of(
      out.lottery.begin(), out.lottery.end(), [&](const ReportBranch& b) {
        return g.contains(b.reports.r1) && g.contains(b.reports.r2);
      });
  return out;
}

MechanismOutcome run_direct_mechanism(const Scenario& reported,
                                      MechanismSource source) {
  MechanismOutcome out;
  out.source = source;
  if (source == MechanismSource::table1) {
    Table1Assignment assign = table1_assign(reported);
    out.reports = assign.lottery;
    out.label = assign.label;
    out.on_grid = assign.on_grid;
    if (!out.on_grid) return out;
    std::vector<AllocationBranch> flat;
    for (const ReportBranch& rb : out.reports)
      for (const AllocationBranch& ab : fcfs_allocate(reported, rb.reports))
        flat.push_back({rb.prob * ab.prob, ab.alloc});
    out.allocation = make_lottery(std::move(flat));
    return out;
  }
  const CostModel quad = CostModel::quadratic();
  EquilibriumSet oracle = nash_oracle(quad, reported);
  SelectedEquilibrium sel = select_social_equilibrium(quad, reported, oracle);
  out.reports = {{Rat(1), sel.reports}};
  out.allocation = sel.lottery;
  out.label = classify(reported).label;
  out.on_grid = true;
  return out;
}

namespace {

bool branches_feasible(const AllocationLottery& l, int agent,
                       GridTime true_earliest) {
  return std::all_of(l.begin(), l.end(), [&](const AllocationBranch& b) {
    return !(b.alloc.time(agent) < true_earliest);
  });
}

}  // namespace

SPReport verify_strategy_proofness(const CostModel& model,
                                   const Scenario& true_scenario,
                                   MechanismSource source) {
  SPReport rep;
  const MechanismOutcome truthful = run_direct_mechanism(true_scenario, source);
  if (!truthful.on_grid) {
    rep.truthful_malformed = true;
    return rep;
  }

  const std::vector<GridTime> grid = true_scenario.grid().enumerate();
  for (int agent = 1; agent <= 2; ++agent) {
    const AgentProfile truth = true_scenario.agent(agent);
    const AgentProfile opp = true_scenario.agent(3 - agent);

    std::optional<CostValue> truthful_cost;
    if (branches_feasible(truthful.allocation, agent, truth.earliest))
      truthful_cost = expected_agent_cost(model, agent, truthful.allocation,
                                          truth.desired);

    for (GridTime e_hat : grid) {
      for (GridTime d_hat : grid) {
        if (d_hat < e_hat) continue;
        AgentProfile claim{e_hat, d_hat};
        if (claim == truth) continue;
        Scenario reported =
            agent == 1 ? Scenario(true_scenario.grid(), true_scenario.crossing(),
                                  claim, opp)
                       : Scenario(true_scenario.grid(), true_scenario.crossing(),
                                  opp, claim);
        MechanismOutcome outcome = run_direct_mechanism(reported, source);
        if (!outcome.on_grid) continue;
        if (!branches_feasible(outcome.allocation, agent, truth.earliest))
          continue;
        CostValue dev =
            expected_agent_cost(model, agent, outcome.allocation, truth.desired);
        if (!truthful_cost || dev < *truthful_cost)
          rep.rows.push_back({agent, claim, truthful_cost, dev});
      }
    }
  }
  return rep;
}

SPReport verify_baseline_sp(const CostModel& model,
                            const Scenario& true_scenario) {
  SPReport rep;
  const std::vector<GridTime> grid = true_scenario.grid().enumerate();
  for (int agent = 1; agent <= 2; ++agent) {
    const AgentProfile truth = true_scenario.agent(agent);
    const GridTime opp_report = true_scenario.agent(3 - agent).desired;
    auto pair_for = [&](GridTime own) {
      return agent == 1 ? ReportPair{own, opp_report}
                        : ReportPair{opp_report, own};
    };

    AllocationLottery truthful_lottery =
        fcfs_allocate(true_scenario, pair_for(truth.desired));
    std::optional<CostValue> truthful_cost;
    if (branches_feasible(truthful_lottery, agent, truth.earliest))
      truthful_cost = expected_agent_cost(model, agent, truthful_lottery,
                                          truth.desired);

    for (GridTime r : grid) {
      if (r == truth.desired) continue;
      AllocationLottery l = fcfs_allocate(true_scenario, pair_for(r));
      if (!branches_feasible(l, agent, truth.earliest)) continue;
      CostValue dev = expected_agent_cost(model, agent, l, truth.desired);
      if (!truthful_cost || dev < *truthful_cost)
        rep.rows.push_back({agent, {truth.earliest, r}, truthful_cost, dev});
    }
  }
  return rep;
}

namespace {

// The selection-formula allocation for a scenario whose comparison row is
// already known, in physical order.
Allocation formula_allocation(const Scenario& s, const CaseInfo& ci, int row) {
  const AgentProfile& pi = s.agent(ci.role_i);
  const AgentProfile& pj = s.agent(ci.role_j);
  auto physical = [&](GridTime ti, GridTime tj) {
    return ci.role_i == 1 ? Allocation{ti, tj} : Allocation{tj, ti};
  };
  if (row == 1) return physical(pj.earliest, pj.earliest + s.spacing());
  if (row == 2) {
    GridTime bar = max_t(pj.desired - s.half_crossing(), pj.earliest);
    return physical(bar + s.spacing(), bar);
  }
  return physical(pi.earliest, pi.earliest + s.spacing());
}

}  // namespace

std::optional<Discrepancy> table1_consistency(const Scenario& s,
                                              const Table1Assignment& assign,
                                              const CrosscheckReport& cross) {
  if (!cross.theorem1_compared || !cross.theorem1_agreed) return std::nullopt;
  if (!assign.on_grid) return std::nullopt;

  const CaseInfo ci = classify(s);
  const Allocation expect = formula_allocation(s, ci, cross.theorem1_row);

  std::vector<AllocationBranch> flat;
  for (const ReportBranch& rb : assign.lottery)
    for (const AllocationBranch& ab : fcfs_allocate(s, rb.reports))
      flat.push_back({rb.prob * ab.prob, ab.alloc});
  AllocationLottery image = make_lottery(std::move(flat));

  for (const AllocationBranch& b : image)
    if (b.alloc == expect) return std::nullopt;

  std::ostringstream detail;
  detail << "row=" << cross.theorem1_row;
  const CostModel quad = CostModel::quadratic();
  AllocationLottery formula = make_lottery({{Rat(1), expect}});
  return Discrepancy{CompareKind::table1,
                     scenario_key(s),
                     ci.label,
                     detail.str(),
                     format_report_lottery(assign.lottery) + " -> " +
                         format_lottery(image),
                     expected_social_cost(quad, s, image).str(),
                     format_allocation(expect),
                     expected_social_cost(quad, s, formula).str()};
}

}  // namespace igame
