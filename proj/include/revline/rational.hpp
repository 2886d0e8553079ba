#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace revline {

/// Arbitrary-precision rational, kept in canonical lowest terms.
using Rational = boost::multiprecision::cpp_rational;

/// Prints "p/q" in lowest terms, or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.str(); }

inline double to_double(const Rational& r) { return static_cast<double>(r); }

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on anything else.
inline Rational parse_rational(const std::string& text) {
  try {
    return Rational(text);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational: '" + text + "'");
  }
}

}  // namespace revline
