#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace qcf {

using BigInt = boost::multiprecision::cpp_int;
/// Normalized fraction: gcd(|num|, den) = 1, den > 0, zero is 0/1.
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

/// Accepts "p/q", "p" or "-p/q".
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  auto valid_int = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto to_big = [](std::string_view s) {
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
    return BigInt(std::string(s));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!valid_int(text)) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    return Rational(to_big(text));
  }
  auto num = trim(text.substr(0, slash));
  auto den = trim(text.substr(slash + 1));
  if (!valid_int(num) || !valid_int(den) || den[0] == '-')
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  BigInt d = to_big(den);
  if (d == 0) throw std::domain_error("rational with zero denominator");
  return Rational(to_big(num), d);
}

}  // namespace qcf
