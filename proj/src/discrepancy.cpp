#include "igame/discrepancy.hpp"

#include <sstream>

namespace igame {

std::string to_string(CompareKind kind) {
  switch (kind) {
    case CompareKind::lemma_soundness: return "lemma-soundness";
    case CompareKind::social_cases: return "social-cases";
    case CompareKind::theorem1: return "theorem1";
    case CompareKind::table1: return "table1";
  }
  return "?";
}

std::string scenario_key(const Scenario& s) {
  std::ostringstream os;
  os << "dt=" << format_ticks_span(s.crossing())
     << " e1=" << format_ticks(s.agent(1).earliest)
     << " d1=" << format_ticks(s.agent(1).desired)
     << " e2=" << format_ticks(s.agent(2).earliest)
     << " d2=" << format_ticks(s.agent(2).desired);
  return os.str();
}

std::string format_discrepancy(const Discrepancy& d) {
  std::ostringstream os;
  os << to_string(d.kind) << " | " << d.scenario_key << " | "
     << to_string(d.label) << " | " << d.detail << " | closed "
     << d.closed_answer << " cost " << d.closed_cost << " | oracle "
     << d.oracle_answer << " cost " << d.oracle_cost;
  return os.str();
}

}  // namespace igame
