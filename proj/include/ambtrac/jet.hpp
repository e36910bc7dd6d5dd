#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ambtrac/rational.hpp"

namespace ambtrac {

// Monomial keys pack one 4-bit exponent per variable plus the total degree
// in the top byte, so raw key order is degree-major and two keys multiply by
// plain integer addition (no nibble carries: every per-variable exponent is
// bounded by the total-degree cap kMaxOrder <= 15).
constexpr int kMaxVars = 12;
constexpr int kMaxOrder = 15;

using MonoKey = std::uint64_t;

struct MultiIndex {
  std::vector<int> exponents;

  int degree() const;
  bool operator==(const MultiIndex&) const = default;
};

MonoKey mono_pack(const MultiIndex& mi);
MultiIndex mono_unpack(MonoKey key, int nvars);

inline int mono_degree(MonoKey key) { return static_cast<int>(key >> 56); }
inline int mono_exp(MonoKey key, int var) {
  return static_cast<int>((key >> (4 * var)) & 0xF);
}

// All monomials in nvars variables of total degree <= maxdeg, ascending key
// order (degree-major). Deterministic; used for probe enumeration.
std::vector<MultiIndex> monomials_up_to(int nvars, int maxdeg);

// Truncated multivariate power series with exact rational coefficients.
// `order` is the guaranteed window: coefficients of total degree <= order are
// meaningful and stored sparsely (ascending keys, no zero entries); degrees
// above `order` are unknown and never stored. Instances are immutable after
// construction and all operations are pure functions; binary operations
// truncate to the minimum operand order.
class Jet {
 public:
  using Term = std::pair<MonoKey, Rational>;

  Jet() : nvars_(0), order_(0) {}
  Jet(int nvars, int order, std::vector<Term> terms);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool operator==(const Jet&) const = default;

 private:
  int nvars_;
  int order_;
  std::vector<Term> terms_;  // sorted by key; zero coefficients dropped
};

Jet jet_const(const Rational& c, int nvars, int order);
Jet jet_var(int var, int nvars, int order);
Jet jet_monomial(const Rational& c, const MultiIndex& mi, int nvars, int order);

Jet jet_add(const Jet& a, const Jet& b);
Jet jet_sub(const Jet& a, const Jet& b);
Jet jet_neg(const Jet& a);
Jet jet_scale(const Jet& a, const Rational& c);
Jet jet_mul(const Jet& a, const Jet& b);

// Multiplicative inverse; requires nonzero constant term.
Jet jet_invert(const Jet& a);

// Formal partial derivative; result order = max(order - 1, 0).
Jet jet_partial(const Jet& a, int var);

// Constant coefficient (value at the base point).
Rational jet_eval0(const Jet& a);

// Coefficient extraction (zero when absent; degree beyond order is an error).
Rational jet_coeff(const Jet& a, const MultiIndex& mi);

// Restriction to a smaller guaranteed window; new_order <= order required.
Jet jet_truncate(const Jet& a, int new_order);

// Declares a wider window for a jet known exactly (polynomial inputs only:
// flat/terminating scenario metrics). Raising the order of a genuinely
// truncated series would fabricate zeros, so use is confined to constructors
// of exact data.
Jet jet_extend_exact(const Jet& a, int new_order);

// a^w for rational w via the binomial series; requires constant term 1.
Jet jet_pow_binomial(const Jet& a, const Rational& w);

// Variable reindexing: var_map[i] = index of old variable i in the new
// space; injective, new_nvars >= max(var_map)+1. Order preserved.
Jet jet_embed(const Jet& a, int new_nvars, const std::vector<int>& var_map);

// Coefficient-of extraction: the jet in the kept variables multiplying
// prod x_v^{e_v} over `fixed`. Every variable must appear in exactly one of
// `fixed` / `keep`; kept variables are renumbered in the given sequence.
// Result order = a.order() - sum of fixed exponents.
Jet jet_slice(const Jet& a, const std::vector<std::pair<int, int>>& fixed,
              const std::vector<int>& keep);

// Diagnostics only: deterministic human-readable form like "3/2 x0^2 x1".
std::string jet_str(const Jet& a, const std::vector<std::string>& names = {});

inline Jet operator+(const Jet& a, const Jet& b) { return jet_add(a, b); }
inline Jet operator-(const Jet& a, const Jet& b) { return jet_sub(a, b); }
inline Jet operator-(const Jet& a) { return jet_neg(a); }
inline Jet operator*(const Jet& a, const Jet& b) { return jet_mul(a, b); }
inline Jet operator*(const Rational& c, const Jet& a) { return jet_scale(a, c); }
inline Jet operator*(const Jet& a, const Rational& c) { return jet_scale(a, c); }

}  // namespace ambtrac
