#include "ambtrac/metrics.hpp"

#include <random>
#include <stdexcept>

namespace ambtrac {

Jet cos_sq_jet(int var, int nvars, int order) {
  // cos^2 u = 1 + sum_{k>=1} (-1)^k 2^{2k-1} u^{2k} / (2k)!
  std::vector<Jet::Term> terms;
  terms.push_back({mono_pack(MultiIndex{std::vector<int>(nvars, 0)}), 1});
  Rational fact = 1;  // (2k)!
  Rational pw = 2;    // 2^{2k-1}
  for (int k = 1; 2 * k <= order; ++k) {
    fact *= (2 * k - 1) * (2 * k);
    const Rational c = (k % 2 ? -1 : 1) * pw / fact;
    MultiIndex mi{std::vector<int>(nvars, 0)};
    mi.exponents[var] = 2 * k;
    terms.push_back({mono_pack(mi), c});
    pw *= 4;
  }
  return Jet(nvars, order, std::move(terms));
}

TensorJet flat_metric(int n, int order) {
  TensorJet g(n, {Variance::kDown, Variance::kDown}, order);
  for (int i = 0; i < n; ++i) g.set({i, i}, jet_const(1, n, order));
  g.symmetries = {{0, 1, false}};
  return g;
}

TensorJet sphere_metric(int n, int order) {
  TensorJet g(n, {Variance::kDown, Variance::kDown}, order);
  Jet acc = jet_const(1, n, order);
  g.set({0, 0}, acc);
  for (int i = 1; i < n; ++i) {
    acc = jet_mul(acc, cos_sq_jet(i - 1, n, order));
    g.set({i, i}, acc);
  }
  g.symmetries = {{0, 1, false}};
  return g;
}

TensorJet product_sphere_metric(int order) {
  TensorJet g(4, {Variance::kDown, Variance::kDown}, order);
  g.set({0, 0}, jet_const(1, 4, order));
  g.set({1, 1}, cos_sq_jet(0, 4, order));
  g.set({2, 2}, jet_const(1, 4, order));
  g.set({3, 3}, cos_sq_jet(2, 4, order));
  g.symmetries = {{0, 1, false}};
  return g;
}

TensorJet random_rational_metric(int n, int order, std::uint64_t seed,
                                 const std::vector<int>& support,
                                 int pert_degree) {
  for (int v : support) {
    if (v < 0 || v >= n)
      throw std::invalid_argument("random_rational_metric: bad support");
  }
  std::mt19937_64 rng(seed);
  const auto reduced =
      monomials_up_to(static_cast<int>(support.size()), pert_degree);
  TensorJet g(n, {Variance::kDown, Variance::kDown}, order);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Jet e = (i == j) ? jet_const(1, n, order) : jet_const(0, n, order);
      for (const auto& mi : reduced) {
        if (mi.degree() == 0) continue;
        const int p = static_cast<int>(rng() % 5) - 2;
        const int q = static_cast<int>(rng() % 3) + 1;
        if (p == 0) continue;
        MultiIndex full{std::vector<int>(n, 0)};
        for (std::size_t k = 0; k < support.size(); ++k)
          full.exponents[support[k]] = mi.exponents[k];
        e = jet_add(e, jet_monomial(rat_frac(p, q), full, n, order));
      }
      g.set({i, j}, e);
      if (i != j) g.set({j, i}, e);
    }
  }
  g.symmetries = {{0, 1, false}};
  return g;
}

}  // namespace ambtrac
