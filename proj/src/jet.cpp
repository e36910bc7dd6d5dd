#include "ambtrac/jet.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace ambtrac {

namespace {

void check_vars(int nvars) {
  if (nvars < 0 || nvars > kMaxVars) {
    throw std::invalid_argument("jet: variable count out of range");
  }
}

void check_order(int order) {
  if (order < 0 || order > kMaxOrder) {
    throw std::invalid_argument("jet: order out of range");
  }
}

void check_match(const Jet& a, const Jet& b) {
  if (a.nvars() != b.nvars()) {
    throw std::invalid_argument("jet: variable-count mismatch");
  }
}

Jet make_jet(int nvars, int order, std::vector<Jet::Term> terms) {
  return Jet(nvars, order, std::move(terms));
}

}  // namespace

int MultiIndex::degree() const {
  int d = 0;
  for (int e : exponents) d += e;
  return d;
}

MonoKey mono_pack(const MultiIndex& mi) {
  if (static_cast<int>(mi.exponents.size()) > kMaxVars) {
    throw std::invalid_argument("mono_pack: too many variables");
  }
  MonoKey key = 0;
  int deg = 0;
  for (std::size_t v = 0; v < mi.exponents.size(); ++v) {
    const int e = mi.exponents[v];
    if (e < 0 || e > kMaxOrder) {
      throw std::invalid_argument("mono_pack: exponent out of range");
    }
    key |= static_cast<MonoKey>(e) << (4 * v);
    deg += e;
  }
  if (deg > kMaxOrder) {
    throw std::invalid_argument("mono_pack: total degree out of range");
  }
  key |= static_cast<MonoKey>(deg) << 56;
  return key;
}

MultiIndex mono_unpack(MonoKey key, int nvars) {
  MultiIndex mi;
  mi.exponents.resize(nvars);
  for (int v = 0; v < nvars; ++v) mi.exponents[v] = mono_exp(key, v);
  return mi;
}

std::vector<MultiIndex> monomials_up_to(int nvars, int maxdeg) {
  check_vars(nvars);
  if (maxdeg < 0) return {};
  std::vector<MultiIndex> out;
  MultiIndex cur;
  cur.exponents.assign(nvars, 0);
  // Enumerate recursively, then sort by key for the degree-major order.
  struct Rec {
    int nvars;
    int maxdeg;
    std::vector<MultiIndex>* out;
    void go(MultiIndex& mi, int var, int left) {
      if (var == nvars) {
        out->push_back(mi);
        return;
      }
      for (int e = 0; e <= left; ++e) {
        mi.exponents[var] = e;
        go(mi, var + 1, left - e);
      }
      mi.exponents[var] = 0;
    }
  } rec{nvars, maxdeg, &out};
  rec.go(cur, 0, maxdeg);
  std::sort(out.begin(), out.end(),
            [](const MultiIndex& a, const MultiIndex& b) {
              return mono_pack(a) < mono_pack(b);
            });
  return out;
}

Jet::Jet(int nvars, int order, std::vector<Term> terms)
    : nvars_(nvars), order_(order), terms_(std::move(terms)) {
  check_vars(nvars_);
  check_order(order_);
  MonoKey prev = 0;
  bool first = true;
  for (const auto& [key, coeff] : terms_) {
    if (!first && key <= prev) {
      throw std::invalid_argument("jet: terms not strictly ascending");
    }
    if (coeff == 0) throw std::invalid_argument("jet: stored zero coefficient");
    if (mono_degree(key) > order_) {
      throw std::invalid_argument("jet: term degree beyond order");
    }
    for (int v = nvars_; v < kMaxVars; ++v) {
      if (mono_exp(key, v) != 0) {
        throw std::invalid_argument("jet: exponent on nonexistent variable");
      }
    }
    prev = key;
    first = false;
  }
}

Jet jet_const(const Rational& c, int nvars, int order) {
  check_vars(nvars);
  check_order(order);
  std::vector<Jet::Term> terms;
  if (c != 0) terms.emplace_back(0, c);
  return make_jet(nvars, order, std::move(terms));
}

Jet jet_var(int var, int nvars, int order) {
  check_vars(nvars);
  check_order(order);
  if (var < 0 || var >= nvars) {
    throw std::invalid_argument("jet_var: variable out of range");
  }
  MultiIndex mi;
  mi.exponents.assign(nvars, 0);
  mi.exponents[var] = 1;
  return jet_monomial(1, mi, nvars, order);
}

Jet jet_monomial(const Rational& c, const MultiIndex& mi, int nvars,
                 int order) {
  check_vars(nvars);
  check_order(order);
  if (static_cast<int>(mi.exponents.size()) != nvars) {
    throw std::invalid_argument("jet_monomial: multi-index length mismatch");
  }
  if (mi.degree() > order) {
    throw std::invalid_argument("jet_monomial: degree beyond order");
  }
  std::vector<Jet::Term> terms;
  if (c != 0) terms.emplace_back(mono_pack(mi), c);
  return make_jet(nvars, order, std::move(terms));
}

Jet jet_add(const Jet& a, const Jet& b) {
  check_match(a, b);
  const int order = std::min(a.order(), b.order());
  std::vector<Jet::Term> terms;
  terms.reserve(a.terms().size() + b.terms().size());
  auto ia = a.terms().begin(), ea = a.terms().end();
  auto ib = b.terms().begin(), eb = b.terms().end();
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && ia->first < ib->first)) {
      if (mono_degree(ia->first) <= order) terms.emplace_back(*ia);
      ++ia;
    } else if (ia == ea || ib->first < ia->first) {
      if (mono_degree(ib->first) <= order) terms.emplace_back(*ib);
      ++ib;
    } else {
      if (mono_degree(ia->first) <= order) {
        Rational sum = ia->second + ib->second;
        if (sum != 0) terms.emplace_back(ia->first, std::move(sum));
      }
      ++ia;
      ++ib;
    }
  }
  return make_jet(a.nvars(), order, std::move(terms));
}

Jet jet_sub(const Jet& a, const Jet& b) { return jet_add(a, jet_neg(b)); }

Jet jet_neg(const Jet& a) {
  std::vector<Jet::Term> terms = a.terms();
  for (auto& [key, coeff] : terms) coeff = -coeff;
  return make_jet(a.nvars(), a.order(), std::move(terms));
}

Jet jet_scale(const Jet& a, const Rational& c) {
  if (c == 0) return jet_const(0, a.nvars(), a.order());
  std::vector<Jet::Term> terms = a.terms();
  for (auto& [key, coeff] : terms) coeff *= c;
  return make_jet(a.nvars(), a.order(), std::move(terms));
}

Jet jet_mul(const Jet& a, const Jet& b) {
  check_match(a, b);
  const int order = std::min(a.order(), b.order());
  if (a.is_zero() || b.is_zero()) return jet_const(0, a.nvars(), order);
  std::unordered_map<MonoKey, Rational> acc;
  acc.reserve(a.terms().size() * 2 + b.terms().size());
  for (const auto& [ka, ca] : a.terms()) {
    const int da = mono_degree(ka);
    if (da > order) break;
    const int rem = order - da;
    for (const auto& [kb, cb] : b.terms()) {
      if (mono_degree(kb) > rem) break;
      acc[ka + kb] += ca * cb;
    }
  }
  std::vector<Jet::Term> terms;
  terms.reserve(acc.size());
  for (auto& [key, coeff] : acc) {
    if (coeff != 0) terms.emplace_back(key, std::move(coeff));
  }
  std::sort(terms.begin(), terms.end(),
            [](const Jet::Term& x, const Jet::Term& y) {
              return x.first < y.first;
            });
  return make_jet(a.nvars(), order, std::move(terms));
}

Jet jet_invert(const Jet& a) {
  const Rational c0 = jet_eval0(a);
  if (c0 == 0) {
    throw std::domain_error("jet_invert: zero constant term");
  }
  // Newton iteration x <- x(2 - a x); precision doubles each step.
  Jet x = jet_const(1 / c0, a.nvars(), 0);
  int cur = 0;
  while (cur < a.order()) {
    cur = std::min(2 * cur + 1, a.order());
    const Jet at = jet_truncate(a, cur);
    const Jet two = jet_const(2, a.nvars(), cur);
    Jet xe = jet_extend_exact(x, cur);  // valid: Newton error is O(deg^(k))
    x = jet_mul(xe, jet_sub(two, jet_mul(at, xe)));
  }
  return x;
}

Jet jet_partial(const Jet& a, int var) {
  if (var < 0 || var >= a.nvars()) {
    throw std::invalid_argument("jet_partial: variable out of range");
  }
  const int order = std::max(a.order() - 1, 0);
  std::vector<Jet::Term> terms;
  terms.reserve(a.terms().size());
  for (const auto& [key, coeff] : a.terms()) {
    const int e = mono_exp(key, var);
    if (e == 0) continue;
    if (mono_degree(key) - 1 > order) continue;
    const MonoKey nk = key - (MonoKey(1) << (4 * var)) - (MonoKey(1) << 56);
    terms.emplace_back(nk, coeff * e);
  }
  // Keys shift monotonically under the exponent decrement within one degree
  // band but not across bands; restore the invariant.
  std::sort(terms.begin(), terms.end(),
            [](const Jet::Term& x, const Jet::Term& y) {
              return x.first < y.first;
            });
  return make_jet(a.nvars(), order, std::move(terms));
}

Rational jet_eval0(const Jet& a) {
  if (!a.terms().empty() && a.terms().front().first == 0) {
    return a.terms().front().second;
  }
  return Rational(0);
}

Rational jet_coeff(const Jet& a, const MultiIndex& mi) {
  if (static_cast<int>(mi.exponents.size()) != a.nvars()) {
    throw std::invalid_argument("jet_coeff: multi-index length mismatch");
  }
  if (mi.degree() > a.order()) {
    throw std::invalid_argument("jet_coeff: degree beyond guaranteed window");
  }
  const MonoKey key = mono_pack(mi);
  auto it = std::lower_bound(
      a.terms().begin(), a.terms().end(), key,
      [](const Jet::Term& t, MonoKey k) { return t.first < k; });
  if (it != a.terms().end() && it->first == key) return it->second;
  return Rational(0);
}

Jet jet_truncate(const Jet& a, int new_order) {
  if (new_order > a.order()) {
    throw std::invalid_argument("jet_truncate: cannot widen the window");
  }
  check_order(new_order);
  std::vector<Jet::Term> terms;
  for (const auto& t : a.terms()) {
    if (mono_degree(t.first) > new_order) break;
    terms.push_back(t);
  }
  return make_jet(a.nvars(), new_order, std::move(terms));
}

Jet jet_extend_exact(const Jet& a, int new_order) {
  check_order(new_order);
  if (new_order < a.order()) return jet_truncate(a, new_order);
  return make_jet(a.nvars(), new_order, a.terms());
}

Jet jet_pow_binomial(const Jet& a, const Rational& w) {
  if (jet_eval0(a) != 1) {
    throw std::domain_error("jet_pow_binomial: constant term must be 1");
  }
  const int order = a.order();
  const Jet u = jet_sub(a, jet_const(1, a.nvars(), order));
  Jet result = jet_const(1, a.nvars(), order);
  Jet upow = jet_const(1, a.nvars(), order);
  Rational binom = 1;
  for (int k = 1; k <= order; ++k) {
    if (upow.is_zero()) break;
    upow = jet_mul(upow, u);
    binom *= (w - (k - 1));
    binom /= k;
    if (binom == 0) break;  // integer exponent exhausted
    result = jet_add(result, jet_scale(upow, binom));
  }
  return result;
}

Jet jet_embed(const Jet& a, int new_nvars, const std::vector<int>& var_map) {
  check_vars(new_nvars);
  if (static_cast<int>(var_map.size()) != a.nvars()) {
    throw std::invalid_argument("jet_embed: map length mismatch");
  }
  std::vector<bool> used(new_nvars, false);
  for (int tgt : var_map) {
    if (tgt < 0 || tgt >= new_nvars || used[tgt]) {
      throw std::invalid_argument("jet_embed: map not injective into range");
    }
    used[tgt] = true;
  }
  std::vector<Jet::Term> terms;
  terms.reserve(a.terms().size());
  for (const auto& [key, coeff] : a.terms()) {
    MultiIndex mi;
    mi.exponents.assign(new_nvars, 0);
    for (int v = 0; v < a.nvars(); ++v) {
      mi.exponents[var_map[v]] = mono_exp(key, v);
    }
    terms.emplace_back(mono_pack(mi), coeff);
  }
  std::sort(terms.begin(), terms.end(),
            [](const Jet::Term& x, const Jet::Term& y) {
              return x.first < y.first;
            });
  return make_jet(new_nvars, a.order(), std::move(terms));
}

Jet jet_slice(const Jet& a, const std::vector<std::pair<int, int>>& fixed,
              const std::vector<int>& keep) {
  std::vector<int> fixed_exp(a.nvars(), -1);
  int fixed_total = 0;
  for (const auto& [v, e] : fixed) {
    if (v < 0 || v >= a.nvars() || fixed_exp[v] >= 0 || e < 0) {
      throw std::invalid_argument("jet_slice: bad fixed spec");
    }
    fixed_exp[v] = e;
    fixed_total += e;
  }
  std::vector<int> new_index(a.nvars(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const int v = keep[i];
    if (v < 0 || v >= a.nvars() || fixed_exp[v] >= 0 || new_index[v] >= 0) {
      throw std::invalid_argument("jet_slice: bad keep spec");
    }
    new_index[v] = static_cast<int>(i);
  }
  for (int v = 0; v < a.nvars(); ++v) {
    if (fixed_exp[v] < 0 && new_index[v] < 0) {
      throw std::invalid_argument("jet_slice: variable neither fixed nor kept");
    }
  }
  const int new_order = a.order() - fixed_total;
  if (new_order < 0) {
    throw std::invalid_argument("jet_slice: fixed degree beyond order");
  }
  std::vector<Jet::Term> terms;
  for (const auto& [key, coeff] : a.terms()) {
    bool match = true;
    for (int v = 0; v < a.nvars() && match; ++v) {
      if (fixed_exp[v] >= 0 && mono_exp(key, v) != fixed_exp[v]) match = false;
    }
    if (!match) continue;
    MultiIndex mi;
    mi.exponents.assign(static_cast<int>(keep.size()), 0);
    for (int v = 0; v < a.nvars(); ++v) {
      if (new_index[v] >= 0) mi.exponents[new_index[v]] = mono_exp(key, v);
    }
    terms.emplace_back(mono_pack(mi), coeff);
  }
  std::sort(terms.begin(), terms.end(),
            [](const Jet::Term& x, const Jet::Term& y) {
              return x.first < y.first;
            });
  return Jet(static_cast<int>(keep.size()), new_order, std::move(terms));
}

std::string jet_str(const Jet& a, const std::vector<std::string>& names) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, coeff] : a.terms()) {
    if (!first) os << " + ";
    first = false;
    os << rat_str(coeff);
    for (int v = 0; v < a.nvars(); ++v) {
      const int e = mono_exp(key, v);
      if (e == 0) continue;
      os << ' ';
      if (static_cast<int>(names.size()) > v) {
        os << names[v];
      } else {
        os << 'x' << v;
      }
      if (e > 1) os << '^' << e;
    }
  }
  return os.str();
}

}  // namespace ambtrac
