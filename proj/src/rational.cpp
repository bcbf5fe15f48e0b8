#include "pkcache/rational.hpp"

#include "pkcache/error.hpp"

#include <cctype>
#include <cstdio>
#include <limits>

namespace pkcache {

BigInt binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (long long i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

std::size_t binomial_size(long long n, long long k) {
  const BigInt value = binomial(n, k);
  if (value > std::numeric_limits<std::size_t>::max()) {
    throw OutOfRange("binomial coefficient does not fit in 64 bits");
  }
  return value.convert_to<std::size_t>();
}

std::string to_fraction_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

namespace {

BigInt parse_integer(std::string_view digits, std::string_view original) {
  if (digits.empty()) throw InvalidArgument("malformed number: '" + std::string(original) + "'");
  BigInt value = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw InvalidArgument("malformed number: '" + std::string(original) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const BigInt num = parse_integer(s.substr(0, slash), text);
    const BigInt den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    value = Rational(num, den);
  } else {
    long long exponent = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp_text = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      const BigInt magnitude = parse_integer(exp_text, text);
      if (magnitude > 1000) throw InvalidArgument("exponent too large in '" + std::string(text) + "'");
      exponent = magnitude.convert_to<long long>() * (exp_negative ? -1 : 1);
      s = s.substr(0, e);
    }
    std::string digits;
    if (const auto dot = s.find('.'); dot != std::string_view::npos) {
      digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
      exponent -= static_cast<long long>(s.size() - dot - 1);
      if (dot == 0 && s.size() == 1) digits.clear();
    } else {
      digits = std::string(s);
    }
    const BigInt mantissa = parse_integer(digits, text);
    BigInt scale = 1;
    for (long long i = 0; i < (exponent < 0 ? -exponent : exponent); ++i) scale *= 10;
    value = exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
  }
  return negative ? Rational(-value) : value;
}

std::string to_decimal_string(double value, int digits) {
  if (value == 0.0) value = 0.0;  // folds -0
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
  return buffer;
}

}  // namespace pkcache
