#include "igame/payoff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace igame {

CostValue CostValue::from_exact(const Rat& r) {
  CostValue v;
  v.exact_ = r;
  v.approx_ = static_cast<long double>(r.numerator()) /
              static_cast<long double>(r.denominator());
  v.is_exact_ = true;
  return v;
}

CostValue CostValue::from_approx(long double a) {
  CostValue v;
  v.exact_ = Rat(0);
  v.approx_ = a;
  v.is_exact_ = false;
  return v;
}

CostValue CostValue::operator+(const CostValue& o) const {
  if (is_exact_ && o.is_exact_) return from_exact(exact_ + o.exact_);
  return from_approx(approx_ + o.approx_);
}

CostValue CostValue::scaled(const Rat& p) const {
  if (is_exact_) return from_exact(exact_ * p);
  long double f = static_cast<long double>(p.numerator()) /
                  static_cast<long double>(p.denominator());
  return from_approx(approx_ * f);
}

bool CostValue::operator==(const CostValue& o) const {
  if (is_exact_ && o.is_exact_) return exact_ == o.exact_;
  return approx_ == o.approx_;
}

bool CostValue::operator<(const CostValue& o) const {
  if (is_exact_ && o.is_exact_) return exact_ < o.exact_;
  return approx_ < o.approx_;
}

std::string CostValue::str() const {
  if (is_exact_) return format_rat(exact_);
  return "~" + std::to_string(static_cast<double>(approx_));
}

CostModel::CostModel(std::string name, bool exact, long long int_exp,
                     Rat rat_exp)
    : name_(std::move(name)), exact_(exact), int_exp_(int_exp),
      rat_exp_(rat_exp) {}

CostModel CostModel::quadratic() {
  return CostModel("quadratic", true, 2, Rat(2));
}

CostModel CostModel::power_int(long long p) {
  if (p < 2) throw std::invalid_argument("cost model: power exponent must be >= 2");
  return CostModel("power:" + std::to_string(p), true, p, Rat(p));
}

CostModel CostModel::power_rat(const Rat& p) {
  if (p.denominator() == 1) return power_int(p.numerator());
  if (p <= Rat(1))
    throw std::invalid_argument("cost model: power exponent must exceed 1");
  return CostModel("power:" + format_rat(p), false, 0, p);
}

namespace {

std::optional<Rat> parse_rat_token(std::string_view t) {
  // integer, "a/b", or a decimal like "2.5"
  auto parse_ll = [](std::string_view s, long long& out) {
    if (s.empty()) return false;
    size_t i = 0;
    bool neg = s[0] == '-';
    if (neg) i = 1;
    if (i >= s.size()) return false;
    long long v = 0;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
      v = v * 10 + (s[i] - '0');
    }
    out = neg ? -v : v;
    return true;
  };
  size_t slash = t.find('/');
  if (slash != std::string_view::npos) {
    long long num = 0, den = 0;
    if (!parse_ll(t.substr(0, slash), num)) return std::nullopt;
    if (!parse_ll(t.substr(slash + 1), den) || den == 0) return std::nullopt;
    return Rat(num, den);
  }
  size_t dot = t.find('.');
  if (dot != std::string_view::npos) {
    long long whole = 0, frac = 0;
    std::string_view frac_part = t.substr(dot + 1);
    if (frac_part.empty() || frac_part.size() > 9) return std::nullopt;
    if (!parse_ll(t.substr(0, dot), whole)) return std::nullopt;
    if (!parse_ll(frac_part, frac) || frac < 0) return std::nullopt;
    long long den = 1;
    for (size_t i = 0; i < frac_part.size(); ++i) den *= 10;
    Rat mag(frac, den);
    return whole < 0 ? Rat(whole) - mag : Rat(whole) + mag;
  }
  long long v = 0;
  if (!parse_ll(t, v)) return std::nullopt;
  return Rat(v);
}

}  // namespace

std::optional<CostModel> CostModel::parse(std::string_view text) {
  if (text == "quadratic") return quadratic();
  constexpr std::string_view prefix = "power:";
  if (text.substr(0, prefix.size()) != prefix) return std::nullopt;
  auto p = parse_rat_token(text.substr(prefix.size()));
  if (!p || *p <= Rat(1)) return std::nullopt;
  try {
    return power_rat(*p);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

CostValue CostModel::deviation_cost(long long deviation_half_ticks) const {
  long long d = abs_half_ticks(deviation_half_ticks);
  if (exact_) {
    // (d/2)^p in ticks, kept as one exact fraction
    return CostValue::from_exact(
        Rat(checked_pow(d, int_exp_), checked_pow(2, int_exp_)));
  }
  long double base = static_cast<long double>(d) / 2.0L;
  long double e = static_cast<long double>(rat_exp_.numerator()) /
                  static_cast<long double>(rat_exp_.denominator());
  return CostValue::from_approx(powl(base, e));
}

bool CostModel::verify_convexity(long long max_dev_half_ticks) const {
  CostValue prev = deviation_cost(0);
  if (!(CostValue() == prev)) return false;  // c(0) must be zero
  for (long long d = 1; d <= max_dev_half_ticks; ++d) {
    CostValue cur = deviation_cost(d);
    if (!(prev < cur)) return false;  // strictly increasing
    prev = cur;
  }
  for (long long x = 1; x < max_dev_half_ticks; ++x) {
    for (long long h = 1; h <= std::min(x, max_dev_half_ticks - x); ++h) {
      CostValue lo = deviation_cost(x - h);
      CostValue hi = deviation_cost(x + h);
      CostValue mid2 = deviation_cost(x) + deviation_cost(x);
      if (!(mid2 < lo + hi)) return false;  // strictly convex
    }
  }
  return true;
}

CostValue agent_cost(const CostModel& model, GridTime passing,
                     GridTime desired) {
  return model.deviation_cost(passing - desired);
}

}  // namespace igame
