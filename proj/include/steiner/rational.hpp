#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace steiner {

// All coordinates are exact rationals until the final length report.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& x) { return boost::multiprecision::numerator(x); }
inline Int rat_den(const Rat& x) { return boost::multiprecision::denominator(x); }

inline Int rat_floor(const Rat& x) {
  Int n = rat_num(x), d = rat_den(x);
  Int q = n / d;
  if (n < 0 && q * d != n) --q;
  return q;
}

inline Int rat_ceil(const Rat& x) {
  Int n = rat_num(x), d = rat_den(x);
  Int q = n / d;
  if (n > 0 && q * d != n) ++q;
  return q;
}

// Nearest point of {k + 1/2 : k integer}; equidistant inputs resolve toward
// negative infinity, so round_to_half(1) == 1/2.
inline Rat round_to_half(const Rat& x) {
  Int m = rat_ceil(x - 1);
  return Rat(2 * m + 1, 2);
}

// 2-adic valuation of a nonzero integer.
inline int v2(Int n) {
  if (n < 0) n = -n;
  int v = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++v;
  }
  return v;
}

// Smallest nonnegative integer n with n*n >= x. Requires x >= 0.
inline Int ceil_sqrt(const Rat& x) {
  if (x <= 0) return 0;
  Int n = boost::multiprecision::sqrt(rat_num(x) / rat_den(x));
  while (Rat(n * n) < x) ++n;
  while (n > 0 && Rat((n - 1) * (n - 1)) >= x) --n;
  return n;
}

inline double to_double(const Rat& x) { return x.convert_to<double>(); }

// Parses an optionally signed decimal literal with optional fractional part
// and optional e/E exponent. Whole string must match.
inline std::optional<Rat> parse_decimal(std::string_view s) {
  size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    neg = s[i] == '-';
    ++i;
  }
  Int mant = 0;
  long frac_digits = 0;
  bool any = false;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
    mant = mant * 10 + (s[i] - '0');
    any = true;
    ++i;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
      mant = mant * 10 + (s[i] - '0');
      ++frac_digits;
      any = true;
      ++i;
    }
  }
  if (!any) return std::nullopt;
  long exp10 = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      eneg = s[i] == '-';
      ++i;
    }
    if (i == s.size()) return std::nullopt;
    long e = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
      e = e * 10 + (s[i] - '0');
      if (e > 100000) return std::nullopt;
      ++i;
    }
    exp10 = eneg ? -e : e;
  }
  if (i != s.size()) return std::nullopt;
  long e = exp10 - frac_digits;
  Rat r(mant);
  if (e > 0) r *= Rat(boost::multiprecision::pow(Int(10), static_cast<unsigned>(e)));
  if (e < 0) r /= Rat(boost::multiprecision::pow(Int(10), static_cast<unsigned>(-e)));
  return neg ? -r : r;
}

// Compact exact rendering: integers as-is, otherwise num/den.
inline std::string rat_to_string(const Rat& x) {
  Int n = rat_num(x), d = rat_den(x);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

}  // namespace steiner
