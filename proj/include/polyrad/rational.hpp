#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace polyrad {

using Rational = boost::multiprecision::mpq_rational;

/// Parses "p/q", "p", or a plain decimal such as "-0.125" into an exact rational.
/// Throws Error{ParseError} on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Every finite double is a dyadic rational, so this conversion is exact.
Rational exact_from_double(double value);

double to_double(const Rational& value);

std::string to_string(const Rational& value);

}  // namespace polyrad
