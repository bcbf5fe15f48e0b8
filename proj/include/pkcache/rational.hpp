#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace pkcache {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// n choose k, with the convention C(n, k) = 0 for k < 0 or k > n.
BigInt binomial(long long n, long long k);

// Same, for callers that know the value fits. Throws OutOfRange otherwise.
std::size_t binomial_size(long long n, long long k);

// "num/den", or just "num" when the denominator is 1.
std::string to_fraction_string(const Rational& r);

double to_double(const Rational& r);

// Accepts "3", "-2/7", "0.25" or "1e-2". Decimal input is converted exactly.
Rational parse_rational(std::string_view text);

// Fixed-point rendering with `digits` places after the decimal point.
std::string to_decimal_string(double value, int digits = 12);

}  // namespace pkcache
