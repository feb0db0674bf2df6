#include "igame/time_grid.hpp"

#include <stdexcept>

namespace igame {

long long abs_half_ticks(long long span) { return span < 0 ? -span : span; }

GridTime midpoint(GridTime a, GridTime b) {
  long long sum = a.half_ticks() + b.half_ticks();
  if (sum % 2 != 0)
    throw std::invalid_argument("midpoint: inputs differ in parity");
  return GridTime::from_half_ticks(sum / 2);
}

std::string format_ticks(GridTime t) {
  long long h = t.half_ticks();
  // floor division so -3 half-ticks renders as "-2+1/2"
  long long q = (h >= 0) ? h / 2 : -((-h + 1) / 2);
  if (h % 2 == 0) return std::to_string(q);
  return std::to_string(q) + "+1/2";
}

std::string format_ticks_span(long long half_ticks) {
  return format_ticks(GridTime::from_half_ticks(half_ticks));
}

TimeGrid::TimeGrid(long long delta_units, long long lower_ticks,
                   long long upper_ticks)
    : delta_units_(delta_units),
      lower_(GridTime::from_ticks(lower_ticks)),
      upper_(GridTime::from_ticks(upper_ticks)) {
  if (delta_units <= 0) throw std::invalid_argument("grid: delta must be positive");
  if (lower_ > upper_)
    throw std::invalid_argument("grid: lower bound exceeds upper bound");
}

long long TimeGrid::size() const {
  return (upper_ - lower_) / kTickSpan + 1;
}

bool TimeGrid::contains(GridTime t) const {
  return t.is_whole_tick() && lower_ <= t && t <= upper_;
}

GridTime TimeGrid::tick(long long index) const {
  if (index < 0 || index >= size())
    throw std::out_of_range("grid: tick index out of range");
  return lower_ + index * kTickSpan;
}

long long TimeGrid::index_of(GridTime t) const {
  if (!contains(t)) throw std::out_of_range("grid: time not a grid member");
  return (t - lower_) / kTickSpan;
}

std::vector<GridTime> TimeGrid::enumerate() const {
  std::vector<GridTime> out;
  out.reserve(static_cast<size_t>(size()));
  for (long long i = 0; i < size(); ++i) out.push_back(tick(i));
  return out;
}

}  // namespace igame
