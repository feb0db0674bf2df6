#include "igame/rational.hpp"

#include <stdexcept>

namespace igame {

std::string format_rat(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

long long checked_pow(long long base, long long exp) {
  if (base < 0 || exp < 0) throw std::invalid_argument("checked_pow: negative input");
  __int128 acc = 1;
  const __int128 limit = static_cast<__int128>(9'223'372'036'854'775'807LL);
  for (long long i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > limit) throw std::overflow_error("checked_pow: result exceeds 64 bits");
  }
  return static_cast<long long>(acc);
}

}  // namespace igame
