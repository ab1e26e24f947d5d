#pragma once

#include <gmpxx.h>

#include <string>

namespace adk {

// All set-function values, probabilities and spreads are exact rationals.
// Floats appear only in Monte Carlo estimates and finite-difference checks.
using Rational = mpq_class;

/// Parses "p/q" or a bare integer "p". Throws std::invalid_argument on
/// malformed input or zero denominator.
Rational rational_from_string(const std::string& text);

/// Canonical form: reduced, denominator positive, "p" when the denominator
/// is 1 and "p/q" otherwise.
std::string rational_to_string(const Rational& value);

/// mpq_class(p, q) does not reduce, while GMP comparisons assume reduced
/// operands; every value built from raw numerator/denominator pairs passes
/// through here (or rational_from_string).
inline Rational canonical(Rational value) {
  value.canonicalize();
  return value;
}

inline double rational_to_double(const Rational& value) { return value.get_d(); }

inline bool in_unit_interval(const Rational& value) {
  return sgn(value) >= 0 && value <= 1;
}

}  // namespace adk
