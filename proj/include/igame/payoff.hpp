#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "igame/rational.hpp"
#include "igame/scenario.hpp"

namespace igame {

// A cost amount. Quadratic and integer-power models stay exact; non-integer
// exponents fall back to long double and carry exact = false so downstream
// comparisons know they are approximate.
class CostValue {
 public:
  CostValue() : exact_(Rat(0)), approx_(0.0L), is_exact_(true) {}
  static CostValue from_exact(const Rat& r);
  static CostValue from_approx(long double v);

  bool is_exact() const { return is_exact_; }
  const Rat& exact() const { return exact_; }
  long double approx() const { return approx_; }

  CostValue operator+(const CostValue& o) const;
  // Scale by an exact probability.
  CostValue scaled(const Rat& p) const;

  bool operator==(const CostValue& o) const;
  bool operator<(const CostValue& o) const;
  bool operator<=(const CostValue& o) const { return *this < o || *this == o; }

  std::string str() const;

 private:
  Rat exact_;
  long double approx_;
  bool is_exact_;
};

// Strictly increasing, strictly convex cost of missing the desired time.
// Deviations are measured in ticks; the evaluator takes half-ticks and
// divides once, exactly.
class CostModel {
 public:
  static CostModel quadratic();
  // power(p): cost(dev) = dev^p. Integer p >= 2 is exact; a non-integer
  // rational exponent > 1 is evaluated in long double.
  static CostModel power_int(long long p);
  static CostModel power_rat(const Rat& p);
  // "quadratic" | "power:4" | "power:5/2" | "power:2.5"
  static std::optional<CostModel> parse(std::string_view text);

  CostValue deviation_cost(long long deviation_half_ticks) const;
  bool is_exact() const { return exact_; }
  const std::string& name() const { return name_; }

  // Grid-triple convexity witness: c(x-h) + c(x+h) > 2 c(x) and strict
  // monotonicity over deviations up to max_dev half-ticks.
  bool verify_convexity(long long max_dev_half_ticks) const;

 private:
  CostModel(std::string name, bool exact, long long int_exp, Rat rat_exp);
  std::string name_;
  bool exact_;
  long long int_exp_;  // used when exact_
  Rat rat_exp_;        // used when !exact_
};

// Cost an agent pays for passing at t with the given desired time.
CostValue agent_cost(const CostModel& model, GridTime passing, GridTime desired);

}  // namespace igame
