#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace qspace {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt ipow(const BigInt& base, unsigned exp);
inline BigInt ipow(unsigned base, unsigned exp) { return ipow(BigInt(base), exp); }

/// Largest t with t*t <= n (n >= 0).
BigInt isqrt(const BigInt& n);

}  // namespace qspace
