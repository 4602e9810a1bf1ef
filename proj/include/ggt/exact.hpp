#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <string>

namespace ggt {

// Exact arithmetic used by the counting layer. Ball cardinalities and the
// derived constants (notably lambda_tilde) overflow every machine word.
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;
// Wide float for log-space quantities that escape double range.
using BigFloat = boost::multiprecision::cpp_bin_float_50;

inline BigInt rat_floor(const BigRat& q) {
  BigInt n = boost::multiprecision::numerator(q);
  BigInt d = boost::multiprecision::denominator(q);
  BigInt f = n / d;
  if (n < 0 && f * d != n) --f;
  return f;
}

inline bool fits_uint64(const BigInt& n) { return n >= 0 && n <= BigInt(UINT64_MAX); }

// Natural log of a positive big integer, computed through a wide float so
// counts like 2^1600 still give a finite value.
inline double big_log(const BigInt& n) {
  using bf = boost::multiprecision::cpp_bin_float_50;
  bf v(n);
  return static_cast<double>(log(v));
}

inline double big_log10(const BigRat& q) {
  using bf = boost::multiprecision::cpp_bin_float_50;
  bf v(q);
  return static_cast<double>(log10(v));
}

inline double rat_double(const BigRat& q) {
  using bf = boost::multiprecision::cpp_bin_float_50;
  return static_cast<double>(bf(q));
}

// "p/q" for non-integers, plain digits otherwise; used for exact JSON fields.
inline std::string rat_string(const BigRat& q) {
  BigInt n = boost::multiprecision::numerator(q);
  BigInt d = boost::multiprecision::denominator(q);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

}  // namespace ggt
