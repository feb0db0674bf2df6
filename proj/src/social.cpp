#include "igame/social.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace igame {

std::string to_string(SeparationMode mode) {
  return mode == SeparationMode::fcfs_compatible ? "fcfs" : "eq4";
}

namespace {

GridTime max_t(GridTime a, GridTime b) { return a < b ? b : a; }

bool lottery_less(const AllocationLottery& a, const AllocationLottery& b) {
  auto key = [](const AllocationBranch& br) {
    return std::make_tuple(br.alloc.t1, br.alloc.t2, br.prob);
  };
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(),
      [&](const AllocationBranch& x, const AllocationBranch& y) {
        return key(x) < key(y);
      });
}

// Smallest L1 distance between any branch of a and any branch of b,
// in half-ticks.
long long lottery_distance(const AllocationLottery& a,
                           const AllocationLottery& b) {
  long long best = -1;
  for (const AllocationBranch& x : a) {
    for (const AllocationBranch& y : b) {
      long long d = abs_half_ticks(x.alloc.t1 - y.alloc.t1) +
                    abs_half_ticks(x.alloc.t2 - y.alloc.t2);
      if (best < 0 || d < best) best = d;
    }
  }
  return best;
}

}  // namespace

SociallyOptimalAllocation socially_optimal_allocation(const CostModel& model,
                                                      const Scenario& s,
                                                      SeparationMode mode) {
  const long long sep = mode == SeparationMode::fcfs_compatible
                            ? s.spacing()
                            : s.crossing();
  const GridTime lo = s.grid().lower();
  const GridTime hi = s.grid().upper() + s.spacing();

  std::vector<Allocation> argmin;
  CostValue best;
  bool have = false;
  for (GridTime t1 = lo; t1 <= hi; t1 = t1 + kTickSpan) {
    for (GridTime t2 = lo; t2 <= hi; t2 = t2 + kTickSpan) {
      if (abs_half_ticks(t1 - t2) < sep) continue;
      CostValue c = social_cost(model, s, {t1, t2});
      if (!have || c < best) {
        best = c;
        argmin.clear();
        argmin.push_back({t1, t2});
        have = true;
      } else if (c == best) {
        argmin.push_back({t1, t2});
      }
    }
  }
  if (!have)
    throw std::runtime_error(
        "socially_optimal_allocation: grid too small for the separation "
        "constraint");
  std::sort(argmin.begin(), argmin.end());

  SociallyOptimalAllocation out;
  out.argmin_set = argmin;
  out.mode = mode;

  const GridTime d1 = s.agent(1).desired;
  const GridTime d2 = s.agent(2).desired;
  if (d1 == d2) {
    // Fairness coin over a mirrored minimizer pair; among mirror pairs keep
    // the one whose first passer deviates least.
    const Allocation* rep = nullptr;
    for (const Allocation& a : argmin) {
      if (!(a.t1 < a.t2)) continue;
      if (!std::binary_search(argmin.begin(), argmin.end(),
                              Allocation{a.t2, a.t1}))
        continue;
      if (!rep || rep->t1 < a.t1 || (rep->t1 == a.t1 && a.t2 < rep->t2))
        rep = &a;
    }
    if (rep) {
      out.lottery = make_lottery({{Rat(1, 2), *rep},
                                  {Rat(1, 2), {rep->t2, rep->t1}}});
      out.cost = expected_social_cost(model, s, out.lottery);
      return out;
    }
  }

  // Deterministic pick: exact-cost ties go to the allocation that lays the
  // longer deviation on the later-desiring agent, then lexicographic.
  const int later = d1 < d2 ? 2 : 1;
  const int earlier = 3 - later;
  const Allocation* pick = nullptr;
  long long pick_score = 0;
  for (const Allocation& a : argmin) {
    long long score =
        abs_half_ticks(a.time(later) - s.agent(later).desired) -
        abs_half_ticks(a.time(earlier) - s.agent(earlier).desired);
    if (!pick || score > pick_score) {
      pick = &a;
      pick_score = score;
    }
  }
  out.lottery = make_lottery({{Rat(1), *pick}});
  out.cost = expected_social_cost(model, s, out.lottery);
  return out;
}

SociallyOptimalAllocation closed_form_social_cases(const CostModel& model,
                                                   const Scenario& s) {
  SociallyOptimalAllocation out;
  out.mode = SeparationMode::fcfs_compatible;

  const CaseInfo ci = classify(s);
  if (ci.label == CaseLabel::NoConflict) {
    Allocation truthful{s.agent(1).desired, s.agent(2).desired};
    out.lottery = make_lottery({{Rat(1), truthful}});
    out.argmin_set = {truthful};
    out.cost = expected_social_cost(model, s, out.lottery);
    return out;
  }

  const GridTime di = s.agent(ci.role_i).desired;
  const GridTime dj = s.agent(ci.role_j).desired;
  const long long gap = dj - di;
  const long long cross = s.crossing();
  auto physical = [&](GridTime ti, GridTime tj) {
    return ci.role_i == 1 ? Allocation{ti, tj} : Allocation{tj, ti};
  };

  std::vector<AllocationBranch> branches;
  if (gap == 0) {
    GridTime first = di - cross / 2;
    GridTime second = di + cross / 2 + kTickSpan;
    branches = {{Rat(1, 2), {first, second}}, {Rat(1, 2), {second, first}}};
  } else if (gap % (2 * kTickSpan) == 0) {
    // Even gap in ticks: the midpoint split lands on the grid.
    long long shift = (cross - gap) / 2;
    branches = {{Rat(1), physical(di - shift, dj + shift + kTickSpan)}};
  } else {
    // Odd gap: a coin over the two roundings of the half-tick split. The
    // branches have different separations and different costs; they are
    // reproduced as written.
    long long up = (cross - gap + kTickSpan) / 2;
    long long down = (cross - gap - kTickSpan) / 2;
    branches = {{Rat(1, 2), physical(di - up, dj + up + kTickSpan)},
                {Rat(1, 2), physical(di - down, dj + down + kTickSpan)}};
  }
  out.lottery = make_lottery(std::move(branches));
  for (const AllocationBranch& b : out.lottery)
    out.argmin_set.push_back(b.alloc);
  std::sort(out.argmin_set.begin(), out.argmin_set.end());
  out.cost = expected_social_cost(model, s, out.lottery);
  return out;
}

std::vector<AllocationSetEntry> equilibrium_allocations(
    const Scenario& s, const EquilibriumSet& eqs) {
  std::vector<AllocationSetEntry> out;
  out.reserve(eqs.pairs.size());
  for (ReportPair p : eqs.pairs) out.push_back({p, fcfs_allocate(s, p)});
  return out;
}

namespace {

// Signed half-tick whole-pair shift from some base branch, if the candidate
// lottery is an exact translate of the base lottery (sorted branch by
// branch, equal probabilities).
std::optional<long long> translate_shift(const AllocationLottery& cand,
                                         const AllocationLottery& base) {
  if (cand.size() != base.size() || cand.empty()) return std::nullopt;
  long long k = cand[0].alloc.t1 - base[0].alloc.t1;
  for (size_t n = 0; n < cand.size(); ++n) {
    if (cand[n].prob != base[n].prob) return std::nullopt;
    if (cand[n].alloc.t1 - base[n].alloc.t1 != k) return std::nullopt;
    if (cand[n].alloc.t2 - base[n].alloc.t2 != k) return std::nullopt;
  }
  return k;
}

}  // namespace

SelectedEquilibrium select_social_equilibrium(const CostModel& model,
                                              const Scenario& s,
                                              const EquilibriumSet& eqs) {
  if (eqs.pairs.empty())
    throw std::runtime_error("select_social_equilibrium: empty equilibrium set");

  const SociallyOptimalAllocation opt =
      socially_optimal_allocation(model, s, SeparationMode::fcfs_compatible);
  const std::vector<AllocationSetEntry> entries =
      equilibrium_allocations(s, eqs);

  const AllocationSetEntry* best = nullptr;
  CostValue best_cost;
  long long best_dist = 0;
  for (const AllocationSetEntry& e : entries) {
    CostValue c = expected_social_cost(model, s, e.lottery);
    long long dist = lottery_distance(e.lottery, opt.lottery);
    bool take = false;
    if (!best) {
      take = true;
    } else if (c < best_cost) {
      take = true;
    } else if (c == best_cost) {
      if (dist < best_dist)
        take = true;
      else if (dist == best_dist && lottery_less(e.lottery, best->lottery))
        take = true;
      else if (dist == best_dist && !lottery_less(best->lottery, e.lottery) &&
               e.reports < best->reports)
        take = true;
    }
    if (take) {
      best = &e;
      best_cost = c;
      best_dist = dist;
    }
  }

  SelectedEquilibrium sel;
  sel.reports = best->reports;
  sel.lottery = best->lottery;
  sel.social = best_cost;

  const GridTime d1 = s.agent(1).desired;
  const GridTime d2 = s.agent(2).desired;
  const long long gap = abs_half_ticks(d2 - d1);
  sel.diag.sigma_half_ticks = gap > s.crossing() ? 0 : (s.crossing() - gap) / 2;
  sel.diag.first_passer =
      sel.lottery.size() == 1
          ? (sel.lottery[0].alloc.t1 < sel.lottery[0].alloc.t2 ? 1 : 2)
          : 0;
  sel.diag.achieved_optimal = best_cost == opt.cost;
  if (sel.diag.achieved_optimal) {
    sel.diag.epsilon_half_ticks = 0;
  } else if (sel.lottery.size() == 1) {
    // Nearest argmin member the selection is a whole-pair shift of.
    std::optional<long long> eps;
    for (const Allocation& m : opt.argmin_set) {
      long long k1 = sel.lottery[0].alloc.t1 - m.t1;
      long long k2 = sel.lottery[0].alloc.t2 - m.t2;
      if (k1 != k2) continue;
      if (!eps || abs_half_ticks(k1) < abs_half_ticks(*eps) ||
          (abs_half_ticks(k1) == abs_half_ticks(*eps) && k1 < *eps))
        eps = k1;
    }
    sel.diag.epsilon_half_ticks = eps;
  } else {
    sel.diag.epsilon_half_ticks = translate_shift(sel.lottery, opt.lottery);
  }
  return sel;
}

Theorem1Result closed_form_theorem1(const CostModel& model, const Scenario& s,
                                    const EquilibriumSet& oracle,
                                    const SociallyOptimalAllocation& optimum) {
  Theorem1Result res;
  const CaseInfo ci = classify(s);
  if (ci.label == CaseLabel::NoConflict) return res;

  const AgentProfile& pi = s.agent(ci.role_i);
  const AgentProfile& pj = s.agent(ci.role_j);
  const long long half = s.half_crossing();
  auto physical = [&](GridTime ti, GridTime tj) {
    return ci.role_i == 1 ? Allocation{ti, tj} : Allocation{tj, ti};
  };

  if (pi.desired == pj.desired) {
    res.row = 1;
    res.allocation = physical(pj.earliest, pj.earliest + s.spacing());
  } else if (pj.earliest < pi.earliest && pi.earliest <= pi.desired &&
             pi.desired < pj.desired && pj.desired - half < pi.earliest) {
    res.row = 2;
    GridTime bar = max_t(pj.desired - half, pj.earliest);
    res.allocation = physical(bar + s.spacing(), bar);
  } else {
    res.row = 3;
    res.allocation = physical(pi.earliest, pi.earliest + s.spacing());
  }

  res.multiple_equilibria = oracle.pairs.size() > 1;
  SelectedEquilibrium sel = select_social_equilibrium(model, s, oracle);
  res.optimum_achieved = sel.social == optimum.cost;
  return res;
}

Theorem1Result closed_form_theorem1(const Scenario& s) {
  const CostModel quad = CostModel::quadratic();
  EquilibriumSet oracle = nash_oracle(quad, s);
  SociallyOptimalAllocation opt =
      socially_optimal_allocation(quad, s, SeparationMode::fcfs_compatible);
  return closed_form_theorem1(quad, s, oracle, opt);
}

namespace {

bool in_planner_domain(const Scenario& s, const Allocation& a) {
  const GridTime lo = s.grid().lower();
  const GridTime hi = s.grid().upper() + s.spacing();
  return lo <= a.t1 && a.t1 <= hi && lo <= a.t2 && a.t2 <= hi;
}

std::string case_tag(const Scenario& s, const CaseInfo& ci) {
  if (ci.label == CaseLabel::NoConflict) return "truthful";
  long long gap = abs_half_ticks(s.agent(2).desired - s.agent(1).desired);
  if (gap == 0) return "i";
  return gap % (2 * kTickSpan) == 0 ? "ii" : "iii";
}

}  // namespace

CrosscheckReport crosscheck(const CostModel& model, const Scenario& s) {
  CrosscheckReport rep;
  const CaseInfo ci = classify(s);
  const std::string key = scenario_key(s);

  const SociallyOptimalAllocation cases = closed_form_social_cases(model, s);
  bool offgrid = false;
  for (const AllocationBranch& b : cases.lottery)
    if (!in_planner_domain(s, b.alloc)) offgrid = true;

  for (SeparationMode mode :
       {SeparationMode::fcfs_compatible, SeparationMode::bare_crossing}) {
    SociallyOptimalAllocation opt = socially_optimal_allocation(model, s, mode);
    bool member = true;
    for (const AllocationBranch& b : cases.lottery)
      if (!std::binary_search(opt.argmin_set.begin(), opt.argmin_set.end(),
                              b.alloc))
        member = false;
    if (cases.cost == opt.cost && member) continue;
    std::ostringstream detail;
    detail << "case=" << case_tag(s, ci) << (offgrid ? "-offgrid" : "")
           << " mode=" << to_string(mode);
    rep.rows.push_back({CompareKind::social_cases, key, ci.label, detail.str(),
                        format_lottery(cases.lottery), cases.cost.str(),
                        format_lottery(opt.lottery), opt.cost.str()});
  }

  const EquilibriumSet oracle = nash_oracle(model, s);
  const SociallyOptimalAllocation opt_fcfs =
      socially_optimal_allocation(model, s, SeparationMode::fcfs_compatible);
  const Theorem1Result th = closed_form_theorem1(model, s, oracle, opt_fcfs);
  rep.theorem1_row = th.row;
  if (th.applicable()) {
    SelectedEquilibrium sel = select_social_equilibrium(model, s, oracle);
    bool in_branches = false;
    for (const AllocationBranch& b : sel.lottery)
      if (b.alloc == *th.allocation) in_branches = true;
    bool achieved = sel.social == opt_fcfs.cost;
    if (!(achieved && !in_branches)) {
      rep.theorem1_compared = true;
      rep.theorem1_agreed = in_branches;
      if (!in_branches) {
        std::ostringstream detail;
        detail << "row=" << th.row;
        AllocationLottery formula =
            make_lottery({{Rat(1), *th.allocation}});
        rep.rows.push_back({CompareKind::theorem1, key, ci.label, detail.str(),
                            format_allocation(*th.allocation),
                            expected_social_cost(model, s, formula).str(),
                            format_lottery(sel.lottery), sel.social.str()});
      }
    }
  }
  return rep;
}

}  // namespace igame
