#ifndef PHSOLVE_RATIONAL_HPP
#define PHSOLVE_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "phsolve/errors.hpp"

namespace phsolve {

/// Exact rational number. mpq_class keeps the canonical form we require:
/// gcd(num, den) = 1, den > 0, zero is 0/1.
using Rational = mpq_class;
using Integer = mpz_class;

inline bool is_zero(const Rational& a) { return sgn(a) == 0; }

inline Rational rat_from_string(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw PreconditionFailed("bad rational literal: " + s);
  q.canonicalize();
  return q;
}

/// Canonical "p/q" form, denominator always printed.
inline std::string rat_to_string(const Rational& a) {
  return a.get_num().get_str() + "/" + a.get_den().get_str();
}

/// a^e with integer (possibly negative) exponent; a != 0 required for e < 0.
inline Rational rat_pow(const Rational& a, long e) {
  if (e == 0) return Rational(1);
  Rational base = a;
  if (e < 0) {
    if (is_zero(a)) throw ConsistencyError("0 raised to a negative power");
    base = Rational(1) / a;
    e = -e;
  }
  Rational r(1), p = base;
  while (e > 0) {
    if (e & 1) r *= p;
    p *= p;
    e >>= 1;
  }
  return r;
}

inline Integer int_pow(Integer a, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
  return r;
}

/// max(|num|, |den|), the usual naive height.
inline Integer rat_height(const Rational& a) {
  Integer n = abs(a.get_num()), d = a.get_den();
  return n > d ? n : d;
}

using Point = std::vector<std::int64_t>;

}  // namespace phsolve

#endif
