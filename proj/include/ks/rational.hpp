#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "ks/errors.hpp"

namespace ks {

// All arithmetic in this library is exact. Rat is an arbitrary-precision
// rational kept in lowest terms with positive denominator; Int is an
// arbitrary-precision integer.
using Rat = mpq_class;
using Int = mpz_class;

// GMP keeps rationals canonical through arithmetic but not through the
// two-argument constructor, and comparisons assume canonical form. Call this
// on any Rat that crosses an API boundary from caller-built values.
inline Rat canonical(Rat q) {
  q.canonicalize();
  return q;
}

// Parses "p", "-p" or "p/q" (decimal, no whitespace) into a canonical Rat.
inline Rat parse_rational(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal");
  mpq_class q;
  if (q.set_str(text, 10) != 0)
    throw ParseError("invalid rational literal: '" + text + "'");
  if (q.get_den() == 0)
    throw ParseError("zero denominator in rational literal: '" + text + "'");
  q.canonicalize();
  return q;
}

// Renders a Rat as "p" or "p/q". Inverse of parse_rational on canonical input.
inline std::string to_string(const Rat& q) { return q.get_str(); }

inline std::string to_string(const Int& z) { return z.get_str(); }

// Least common multiple of the denominators, i.e. the smallest positive N
// with N*v integral.
inline Int common_denominator(const std::vector<Rat>& v) {
  Int n = 1;
  for (const Rat& q : v) mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), q.get_den().get_mpz_t());
  return n;
}

inline bool is_integral(const Rat& q) { return q.get_den() == 1; }

inline Int pow2(unsigned long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

}  // namespace ks
