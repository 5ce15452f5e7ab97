#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "oscr/check.hpp"

namespace oscr {

// All scalar arithmetic in the library is exact: arbitrary-precision
// rationals, canonicalized after every operation.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// "num/den" with den > 0, always both parts ("3/1", "-2/5").
inline std::string rational_to_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

inline Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  require(slash != std::string::npos, "rational: expected num/den, got " + s);
  BigInt num(s.substr(0, slash));
  BigInt den(s.substr(slash + 1));
  require(den != 0, "rational: zero denominator in " + s);
  return Rational(num, den);
}

}  // namespace oscr
