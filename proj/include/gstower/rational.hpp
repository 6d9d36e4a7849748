#ifndef GSTOWER_RATIONAL_HPP
#define GSTOWER_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "gstower/error.hpp"

namespace gstower {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator_of(const Rational& q) {
  return boost::multiprecision::numerator(q);
}

inline Integer denominator_of(const Rational& q) {
  return boost::multiprecision::denominator(q);
}

inline int sign(const Rational& q) { return q.sign(); }

inline Integer ipow(Integer base, std::uint64_t exponent) {
  Integer result = 1;
  while (exponent != 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent != 0) base *= base;
  }
  return result;
}

inline Rational rpow(const Rational& base, std::uint64_t exponent) {
  return Rational(ipow(numerator_of(base), exponent),
                  ipow(denominator_of(base), exponent));
}

// Exact form: "n" for integers, "n/d" otherwise.
inline std::string to_exact_string(const Rational& q) {
  if (denominator_of(q) == 1) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

// Fixed-point decimal with `digits` fractional digits, rounded half away
// from zero. Computed in integer arithmetic, so the output is reproducible.
inline std::string to_decimal_string(const Rational& q, unsigned digits = 6) {
  Integer scale = ipow(Integer(10), digits);
  Integer num = numerator_of(q);
  Integer den = denominator_of(q);
  bool negative = num < 0;
  if (negative) num = -num;
  Integer scaled = (2 * num * scale + den) / (2 * den);
  Integer whole = scaled / scale;
  Integer frac = scaled % scale;
  std::string frac_text = frac.str();
  if (frac_text.size() < digits) frac_text.insert(0, digits - frac_text.size(), '0');
  std::string out = (negative && scaled != 0) ? "-" : "";
  out += whole.str();
  if (digits > 0) out += "." + frac_text;
  return out;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Accepts "n", "-n", "n/d" and plain decimals such as "0.25".
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] {
    return ParameterError("malformed rational '" + std::string(text) + "'");
  };
  if (text.empty()) throw fail();
  auto is_int = [](std::string_view s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto to_int = [](std::string_view s) {
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
    return Integer(std::string(s));
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto n = text.substr(0, slash), d = text.substr(slash + 1);
    if (!is_int(n) || !is_int(d)) throw fail();
    Integer den = to_int(d);
    if (den == 0) throw ParameterError("zero denominator in '" + std::string(text) + "'");
    return Rational(to_int(n), den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot), frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    std::string_view digits_whole = whole;
    if (!digits_whole.empty() && (digits_whole[0] == '-' || digits_whole[0] == '+'))
      digits_whole.remove_prefix(1);
    if (frac.empty() || !is_int(frac) || frac[0] == '-' || frac[0] == '+') throw fail();
    if (!digits_whole.empty() && !is_int(digits_whole)) throw fail();
    Integer w = digits_whole.empty() ? Integer(0) : to_int(digits_whole);
    Integer f = to_int(frac);
    Integer scale = ipow(Integer(10), frac.size());
    Rational value(w * scale + f, scale);
    return negative ? Rational(-value) : value;
  }
  if (!is_int(text)) throw fail();
  return Rational(to_int(text));
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

}  // namespace gstower

#endif  // GSTOWER_RATIONAL_HPP
