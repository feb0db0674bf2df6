#pragma once

#include <boost/rational.hpp>
#include <string>

namespace igame {

// Exact arithmetic for probabilities and costs. Magnitudes stay tiny here
// (denominators come from fair coins, numerators from small integer powers),
// so long long components are ample.
using Rat = boost::rational<long long>;

// Canonical text form: "5", "1/2", "13/2". Negative values keep the sign on
// the numerator: "-3/2".
std::string format_rat(const Rat& r);

// b^e for small non-negative integers, throwing std::overflow_error instead
// of wrapping.
long long checked_pow(long long base, long long exp);

}  // namespace igame
