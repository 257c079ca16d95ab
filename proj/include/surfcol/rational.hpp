#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace surfcol {

/// Exact arbitrary-precision rational.
using Rational = boost::multiprecision::cpp_rational;

/// Accepts "p", "p/q" and "-p/q"; throws InvalidInput otherwise.
Rational parse_rational(const std::string& text);
/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string format_rational(const Rational& r);

inline constexpr const char* kDefaultEpsilon = "1/43";

} // namespace surfcol
