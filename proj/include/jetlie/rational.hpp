#pragma once

#include <gmpxx.h>

#include <string>

namespace jetlie {

/// Exact rational of unbounded size, always kept in canonical (reduced) form.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Parses "p" or "p/q"; throws std::invalid_argument on malformed input or zero denominator.
Rational parse_rational(const std::string& text);

/// Exact square root when r is the square of a rational.
bool rational_sqrt(const Rational& r, Rational& root);

}  // namespace jetlie
