#pragma once

#include <string>
#include <vector>

#include "igame/payoff.hpp"
#include "igame/rational.hpp"
#include "igame/scenario.hpp"

namespace igame {

// A realized pair of passing times. Allocations live on whole ticks but are
// not confined to the report grid's upper bound (the pushed-back agent can be
// allocated past it).
struct Allocation {
  GridTime t1;
  GridTime t2;

  GridTime time(int agent) const { return agent == 1 ? t1 : t2; }
  auto operator<=>(const Allocation&) const = default;
};

struct AllocationBranch {
  Rat prob;
  Allocation alloc;

  bool operator==(const AllocationBranch&) const = default;
};

// Canonical form: branches sorted by (t1, t2), no duplicates, probabilities
// summing to one.
using AllocationLottery = std::vector<AllocationBranch>;

AllocationLottery make_lottery(std::vector<AllocationBranch> branches);

// First-come-first-serve allocation rule. The earlier report passes exactly
// at its reported time; the other agent is pushed to at least one crossing
// duration plus one tick later. Equal reports are resolved by a fair coin
// over the two mirrored orderings. Reports must be grid members.
AllocationLottery fcfs_allocate(const Scenario& s, ReportPair reports);

// Every agent can physically attend: passing time >= earliest, per branch.
bool is_feasible(const Scenario& s, const Allocation& a);
bool lottery_feasible(const Scenario& s, const AllocationLottery& l);
// Feasibility of one agent's slot only.
bool feasible_for(const Scenario& s, int agent, const Allocation& a);

// Combined cost of an allocation for both agents.
CostValue social_cost(const CostModel& model, const Scenario& s,
                      const Allocation& a);
CostValue expected_social_cost(const CostModel& model, const Scenario& s,
                               const AllocationLottery& l);
// One agent's expected cost, measured against the given desired time (which
// need not match the scenario's: the strategy-proofness checker evaluates
// reported-game outcomes against true types).
CostValue expected_agent_cost(const CostModel& model, int agent,
                              const AllocationLottery& l, GridTime desired);

std::string format_allocation(const Allocation& a);
std::string format_lottery(const AllocationLottery& l);

}  // namespace igame
