#pragma once

#include <stdexcept>
#include <string>

namespace oscr {

[[noreturn]] inline void fail(const std::string& msg) {
  throw std::invalid_argument(msg);
}

inline void require(bool cond, const std::string& msg) {
  if (!cond) fail(msg);
}

// base^exp saturated at cap + 1, so callers can guard "fits under cap" without
// overflow. Exact integer arithmetic throughout.
inline long long pow_capped(long long base, int exp, long long cap) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

}  // namespace oscr
