#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace graphlim {

/// Exact rational with arbitrary-precision numerator and denominator.
/// Values are always kept canonical (lowest terms, positive denominator).
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" (decimal integers, q > 0). Throws InvalidArgument.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& r);

Rational pow(const Rational& base, unsigned long exponent);

/// Smallest double that is >= r. For any double x, x < r iff x < ceil_to_double(r).
double ceil_to_double(const Rational& r);

/// Floating-point output used everywhere: 12 significant digits, trailing zeros kept.
std::string format_real(double x);

}  // namespace graphlim
