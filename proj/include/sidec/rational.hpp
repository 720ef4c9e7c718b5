#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace sidec {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p" or "p/q" (decimal digits only). Throws ParseError on
/// anything else, including a zero denominator. The result is canonical.
Rational parse_rational(std::string_view text);

/// Canonical text: "p" when the denominator is 1, else "p/q".
std::string to_string(const Rational& value);

/// Smallest r on the dyadic grid 2^-depth with r*r >= value, or the exact
/// square root when value is the square of a rational. value must be >= 0.
Rational sqrt_upper_bound(const Rational& value, unsigned depth);

}  // namespace sidec
