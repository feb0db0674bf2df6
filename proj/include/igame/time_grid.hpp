#pragma once

#include <compare>
#include <string>
#include <vector>

namespace igame {

// All times are integer counts of half-ticks from the time origin. One tick
// (the report step delta) spans two half-ticks, so midpoints of same-parity
// times and the delta/2 offsets used by the case formulas stay exact.
class GridTime {
 public:
  constexpr GridTime() = default;
  static constexpr GridTime from_half_ticks(long long h) { return GridTime(h); }
  static constexpr GridTime from_ticks(long long t) { return GridTime(2 * t); }

  constexpr long long half_ticks() const { return half_; }
  constexpr bool is_whole_tick() const { return half_ % 2 == 0; }

  auto operator<=>(const GridTime&) const = default;

 private:
  explicit constexpr GridTime(long long h) : half_(h) {}
  long long half_ = 0;
};

// Durations (crossing time, spacing, deviations) are plain half-tick counts.
inline constexpr long long kHalfTicksPerTick = 2;
// One report step, in half-ticks; scenario files call this step delta.
inline constexpr long long kTickSpan = kHalfTicksPerTick;

constexpr GridTime operator+(GridTime t, long long half_ticks) {
  return GridTime::from_half_ticks(t.half_ticks() + half_ticks);
}
constexpr GridTime operator-(GridTime t, long long half_ticks) {
  return GridTime::from_half_ticks(t.half_ticks() - half_ticks);
}
// Difference of two times, in half-ticks.
constexpr long long operator-(GridTime a, GridTime b) {
  return a.half_ticks() - b.half_ticks();
}

long long abs_half_ticks(long long span);

// Exact midpoint; the two inputs must have the same parity so the result is
// representable (whole-tick inputs always qualify).
GridTime midpoint(GridTime a, GridTime b);

// "7" for whole ticks, "7+1/2" for the half-tick in between. Negative values
// use the floor form: -3 half-ticks renders as "-2+1/2".
std::string format_ticks(GridTime t);
std::string format_ticks_span(long long half_ticks);

// Uniform report grid: whole ticks from lower to upper inclusive.
// delta_units is the duration of one tick in external time units; it scales
// presentation only and never enters the allocation arithmetic.
class TimeGrid {
 public:
  TimeGrid(long long delta_units, long long lower_ticks, long long upper_ticks);

  long long delta_units() const { return delta_units_; }
  GridTime lower() const { return lower_; }
  GridTime upper() const { return upper_; }

  // Number of report slots.
  long long size() const;
  // Membership test for reports: whole tick within bounds.
  bool contains(GridTime t) const;
  GridTime tick(long long index) const;
  long long index_of(GridTime t) const;
  std::vector<GridTime> enumerate() const;

 private:
  long long delta_units_;
  GridTime lower_;
  GridTime upper_;
};

}  // namespace igame
