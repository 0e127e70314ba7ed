#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace turnpike {

/// Exact rational scalar. mpq_class keeps values in canonical reduced form
/// (denominator positive, gcd 1) after every arithmetic operation.
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Parses "p/q", "p", or a plain terminating decimal such as "0.25".
/// Exponent notation is rejected. Throws InputError on anything else.
/// When allow_decimal is false only "p/q" and integers are accepted.
Rational parse_rational(std::string_view text, bool allow_decimal = true);

/// Canonical text form: "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

/// num/den in canonical form; den must be nonzero.
Rational ratio(long num, long den);

Rational pow(const Rational& base, unsigned exponent);

Rational abs(const Rational& value);

int sign(const Rational& value);

/// The rational with the smallest denominator in the open interval (lo, hi),
/// ties broken by smallest absolute numerator. Requires lo < hi.
Rational simplest_between(const Rational& lo, const Rational& hi);

/// Max-norm of a vector; 0 for an empty vector.
Rational max_norm(const RationalVector& v);

double to_double(const Rational& value);

}  // namespace turnpike
