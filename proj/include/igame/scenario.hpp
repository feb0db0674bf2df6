#pragma once

#include <compare>

#include "igame/time_grid.hpp"

namespace igame {

// Private type of one agent: earliest feasible passing time and desired
// passing time, both report-grid members with earliest <= desired.
struct AgentProfile {
  GridTime earliest;
  GridTime desired;

  auto operator<=>(const AgentProfile&) const = default;
};

// One game instance: the report grid, the crossing duration and both agent
// types. The crossing duration is stored in half-ticks and must be an even
// number of ticks so that half the crossing time lands on the report grid.
class Scenario {
 public:
  Scenario(TimeGrid grid, long long crossing_half_ticks, AgentProfile agent1,
           AgentProfile agent2);

  const TimeGrid& grid() const { return grid_; }
  // Crossing duration (the time the intersection stays occupied), half-ticks.
  long long crossing() const { return crossing_; }
  // Half the crossing duration; on the report grid by construction.
  long long half_crossing() const { return crossing_ / 2; }
  // Minimum spacing FCFS enforces between the two allocations:
  // crossing plus one tick.
  long long spacing() const { return crossing_ + kTickSpan; }

  // agent is 1 or 2 throughout the public interface.
  const AgentProfile& agent(int agent) const;

 private:
  TimeGrid grid_;
  long long crossing_;
  AgentProfile agents_[2];
};

// A strategy profile: one report per agent.
struct ReportPair {
  GridTime r1;
  GridTime r2;

  GridTime report(int agent) const { return agent == 1 ? r1 : r2; }
  auto operator<=>(const ReportPair&) const = default;
};

std::string format_pair(GridTime a, GridTime b);

}  // namespace igame
