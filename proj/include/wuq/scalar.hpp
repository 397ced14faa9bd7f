#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace wuq {

/// Exact rational. GMP arithmetic keeps results canonical; the two-argument
/// constructor does not, so build fractions with ratio().
using Scalar = mpq_class;

/// Canonical p/q.
inline Scalar ratio(long p, long q) {
  Scalar r(p, q);
  r.canonicalize();
  return r;
}

inline Scalar abs(const Scalar& q) { return ::abs(q); }

inline int sign(const Scalar& q) { return sgn(q); }

/// Parses "p/q" or "p". Throws Error(ParseError) on malformed text or a
/// zero denominator.
Scalar parse_scalar(std::string_view text);

/// Always "p/q", including integers ("2/1").
std::string format_scalar(const Scalar& q);

/// base^exponent for a non-negative integer exponent.
Scalar pow(const Scalar& base, unsigned exponent);

Scalar factorial(unsigned n);

}  // namespace wuq
