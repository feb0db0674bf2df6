#include "igame/scenario.hpp"

#include <stdexcept>

namespace igame {

Scenario::Scenario(TimeGrid grid, long long crossing_half_ticks,
                   AgentProfile agent1, AgentProfile agent2)
    : grid_(grid), crossing_(crossing_half_ticks), agents_{agent1, agent2} {
  if (crossing_ <= 0)
    throw std::invalid_argument("scenario: crossing duration must be positive");
  // Half the crossing duration appears directly in report formulas, so it
  // must land on a whole tick: the crossing spans an even number of ticks.
  if (crossing_ % (2 * kTickSpan) != 0)
    throw std::invalid_argument(
        "scenario: crossing duration must be an even number of ticks");
  for (int a = 1; a <= 2; ++a) {
    const AgentProfile& p = agent(a);
    if (!grid_.contains(p.earliest) || !grid_.contains(p.desired))
      throw std::invalid_argument("scenario: agent times must be grid members");
    if (p.earliest > p.desired)
      throw std::invalid_argument(
          "scenario: earliest time exceeds desired time");
  }
}

const AgentProfile& Scenario::agent(int agent) const {
  if (agent != 1 && agent != 2)
    throw std::invalid_argument("scenario: agent index must be 1 or 2");
  return agents_[agent - 1];
}

std::string format_pair(GridTime a, GridTime b) {
  return "(" + format_ticks(a) + "," + format_ticks(b) + ")";
}

}  // namespace igame
