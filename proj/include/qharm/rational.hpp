#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace qharm {

// Exact rational scalar. Conversion from double is exact (doubles are dyadic).
using Rational = mpq_class;

inline Rational rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational rational_from_double(double x) { return Rational(x); }

// Accepts "p", "-p", "p/q".
inline Rational parse_rational(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("parse_rational: bad rational literal '" + s + "'");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace qharm
