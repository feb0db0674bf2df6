#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "igame/mechanism.hpp"
#include "igame/payoff.hpp"
#include "igame/scenario.hpp"
#include "igame/social.hpp"

namespace igame {

// Parsed scenario file. Required keys (all integers, times in ticks):
//   delta, theta_min, theta_max, dt, e1, d1, e2, d2
// Optional keys: cost, separation, source. '#' starts a comment; unknown or
// duplicate keys are errors.
struct ScenarioFileData {
  Scenario scenario;
  std::optional<CostModel> cost;
  std::optional<SeparationMode> separation;
  std::optional<MechanismSource> source;
};

// Throws std::invalid_argument with a "line N: ..." message on bad input.
ScenarioFileData parse_scenario_text(const std::string& text);
ScenarioFileData load_scenario_file(const std::string& path);

std::optional<SeparationMode> parse_separation(const std::string& text);
std::optional<MechanismSource> parse_source(const std::string& text);

}  // namespace igame
