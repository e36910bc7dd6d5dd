#pragma once

#include <gmpxx.h>

#include <string>

#include <Eigen/Core>

namespace ambtrac {

// Exact rational scalar used throughout. GMP keeps values canonical
// (reduced, denominator positive); the helpers add strict parsing and the
// serialization format shared by scenario files and reports.
using Rational = mpq_class;

// Reduced fraction p/q. The two-argument mpq_class constructor stores the
// pair verbatim, and GMP arithmetic and comparisons silently assume reduced
// operands, so every fraction built from parts must pass through here.
Rational rat_frac(long num, long den);

// Accepts "p", "-p", "p/q", "-p/q" in base 10, nothing else (no whitespace,
// no floats, no empty numerator). Throws std::invalid_argument otherwise.
Rational rat_parse(const std::string& text);

// Canonical form: "p" when the denominator is 1, else "p/q" with q > 1.
std::string rat_str(const Rational& value);

}  // namespace ambtrac

namespace Eigen {

// Minimal hook so dense Eigen containers can carry exact rationals. The
// exact kernels (rref, nullspace, Bareiss, signature) live in linalg and do
// their own arithmetic; cost constants here are only advisory.
template <>
struct NumTraits<ambtrac::Rational> : GenericNumTraits<ambtrac::Rational> {
  using Real = ambtrac::Rational;
  using NonInteger = ambtrac::Rational;
  using Nested = ambtrac::Rational;
  using Literal = long;

  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 60,
    MulCost = 40,
  };
};

}  // namespace Eigen
