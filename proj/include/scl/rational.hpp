#pragma once

#include <gmpxx.h>

#include <string>

namespace scl {

// Exact arbitrary-precision rational, always kept in lowest terms.
using Rational = mpq_class;

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

// Parses "p", "p/q" or "-p/q"; throws Errc::ParseError otherwise.
Rational parse_rational(const std::string& text);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace scl
