#include "igame/fcfs.hpp"

#include <algorithm>
#include <stdexcept>

namespace igame {

AllocationLottery make_lottery(std::vector<AllocationBranch> branches) {
  std::sort(branches.begin(), branches.end(),
            [](const AllocationBranch& a, const AllocationBranch& b) {
              return a.alloc < b.alloc;
            });
  AllocationLottery out;
  for (const AllocationBranch& b : branches) {
    if (!out.empty() && out.back().alloc == b.alloc)
      out.back().prob += b.prob;
    else
      out.push_back(b);
  }
  Rat total(0);
  for (const AllocationBranch& b : out) total += b.prob;
  if (total != Rat(1))
    throw std::invalid_argument("lottery: probabilities must sum to 1");
  return out;
}

AllocationLottery fcfs_allocate(const Scenario& s, ReportPair reports) {
  if (!s.grid().contains(reports.r1) || !s.grid().contains(reports.r2))
    throw std::invalid_argument("fcfs: report is not a grid member");
  const long long gap = s.spacing();
  if (reports.r1 < reports.r2) {
    GridTime t1 = reports.r1;
    GridTime t2 = std::max(reports.r2, t1 + gap);
    return {{Rat(1), {t1, t2}}};
  }
  if (reports.r2 < reports.r1) {
    GridTime t2 = reports.r2;
    GridTime t1 = std::max(reports.r1, t2 + gap);
    return {{Rat(1), {t1, t2}}};
  }
  // Equal reports: fair coin over who passes first.
  GridTime r = reports.r1;
  return make_lottery({{Rat(1, 2), {r, r + gap}}, {Rat(1, 2), {r + gap, r}}});
}

bool feasible_for(const Scenario& s, int agent, const Allocation& a) {
  return a.time(agent) >= s.agent(agent).earliest;
}

bool is_feasible(const Scenario& s, const Allocation& a) {
  return feasible_for(s, 1, a) && feasible_for(s, 2, a);
}

bool lottery_feasible(const Scenario& s, const AllocationLottery& l) {
  return std::all_of(l.begin(), l.end(), [&](const AllocationBranch& b) {
    return is_feasible(s, b.alloc);
  });
}

CostValue social_cost(const CostModel& model, const Scenario& s,
                      const Allocation& a) {
  return agent_cost(model, a.t1, s.agent(1).desired) +
         agent_cost(model, a.t2, s.agent(2).desired);
}

CostValue expected_social_cost(const CostModel& model, const Scenario& s,
                               const AllocationLottery& l) {
  CostValue total;
  for (const AllocationBranch& b : l)
    total = total + social_cost(model, s, b.alloc).scaled(b.prob);
  return total;
}

CostValue expected_agent_cost(const CostModel& model, int agent,
                              const AllocationLottery& l, GridTime desired) {
  CostValue total;
  for (const AllocationBranch& b : l)
    total = total + agent_cost(model, b.alloc.time(agent), desired).scaled(b.prob);
  return total;
}

std::string format_allocation(const Allocation& a) {
  return format_pair(a.t1, a.t2);
}

std::string format_lottery(const AllocationLottery& l) {
  if (l.size() == 1) return format_allocation(l[0].alloc);
  std::string out;
  for (const AllocationBranch& b : l) {
    if (!out.empty()) out += " ";
    out += format_rat(b.prob) + ":" + format_allocation(b.alloc);
  }
  return out;
}

}  // namespace igame
