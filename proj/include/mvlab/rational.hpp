#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace mvlab {

/// Arbitrary-precision integer and exact rational. gmpxx keeps every
/// mpq_class result canonical (lowest terms, positive denominator).
using Integer = mpz_class;
using Rational = mpq_class;

/// Builds num/den in lowest terms. Throws Error(ParseError) on den == 0.
Rational make_rational(const Integer& num, const Integer& den);

/// "p/q" or "p" (q omitted when 1).
std::string to_string(const Rational& q);

/// Parses "p", "-p", "p/q". Throws Error(ParseError).
Rational parse_rational(std::string_view text);

int sign(const Rational& q);

/// Best rational approximation of x with denominator at most max_den,
/// taken from the continued-fraction convergents and semiconvergents of
/// the exact binary value of x.
Rational best_rational_approximation(double x, const Integer& max_den);

Integer lcm(const Integer& a, const Integer& b);

}  // namespace mvlab
