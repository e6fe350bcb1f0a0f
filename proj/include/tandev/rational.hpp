#pragma once

#include <gmpxx.h>

#include <string>

namespace tandev {

// Arbitrary-precision rational number.
using Rational = mpq_class;

// Parses "3", "-7/2", "0.25", "1e-3", "2.5E2" into an exact rational.
Rational parse_rational(const std::string& text);

// Exact rational value of a finite double (every double is a dyadic rational).
Rational rational_from_double(double x);

std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace tandev
