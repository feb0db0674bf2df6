#pragma once

#include <string>
#include <vector>

#include "igame/equilibrium.hpp"

namespace igame {

// Families of closed-form-vs-oracle comparisons. The sweep treats
// social_cases and theorem1 rows as known, archivable findings; a
// lemma_soundness or table1 row is always an unexpected failure.
enum class CompareKind {
  lemma_soundness,
  social_cases,
  theorem1,
  table1,
};

std::string to_string(CompareKind kind);

// One structured diff between a closed-form prediction and the brute-force
// answer, with both costs attached.
struct Discrepancy {
  CompareKind kind;
  std::string scenario_key;  // "dt=4 e1=9 d1=10 e2=10 d2=10"
  CaseLabel label;
  std::string detail;        // e.g. separation mode or formula row
  std::string closed_answer;
  std::string closed_cost;
  std::string oracle_answer;
  std::string oracle_cost;
};

std::string scenario_key(const Scenario& s);
std::string format_discrepancy(const Discrepancy& d);

}  // namespace igame
