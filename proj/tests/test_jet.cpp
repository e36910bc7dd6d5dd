#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ambtrac/jet.hpp"

using namespace ambtrac;

namespace {

Jet mono(const Rational& c, std::vector<int> e, int nvars, int order) {
  return jet_monomial(c, MultiIndex{std::move(e)}, nvars, order);
}

// Deterministic sparse random jets for the ring-axiom properties.
Jet random_jet(std::mt19937_64& rng, int nvars, int order, bool unit_constant) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  std::uniform_int_distribution<int> pick(0, 3);
  Jet out = jet_const(unit_constant ? 1 : num(rng), nvars, order);
  const auto monos = monomials_up_to(nvars, order);
  for (const auto& mi : monos) {
    if (mi.degree() == 0) continue;
    if (pick(rng) != 0) continue;
    out = jet_add(out, jet_monomial(rat_frac(num(rng), den(rng)), mi, nvars,
                                    order));
  }
  return out;
}

}  // namespace

TEST_CASE("constants and evaluation") {
  CHECK(jet_const(1, 2, 3).terms().size() == 1);
  CHECK(jet_const(0, 3, 5).is_zero());
  CHECK(jet_eval0(jet_const(Rational(-7, 2), 1, 2)) == Rational(-7, 2));
  CHECK(jet_eval0(jet_add(jet_const(3, 1, 2), jet_var(0, 1, 2))) == 3);
  CHECK(jet_eval0(jet_const(0, 1, 1)) == 0);
  const Jet x = jet_var(0, 1, 2);
  const Jet one = jet_const(1, 1, 2);
  CHECK(jet_eval0(jet_mul(jet_add(one, x), jet_sub(one, x))) == 1);
}

TEST_CASE("products truncate at the minimum order") {
  const Jet x = jet_var(0, 1, 2);
  const Jet one = jet_const(1, 1, 2);
  // (1+x)(1-x) = 1 - x^2
  const Jet p = jet_mul(jet_add(one, x), jet_sub(one, x));
  CHECK(p == jet_sub(one, jet_mul(x, x)));
  // (1+x+x^2)(1+x) at order 2 = 1 + 2x + 2x^2, degree 3 dropped
  const Jet a = jet_add(jet_add(one, x), jet_mul(x, x));
  const Jet b = jet_add(one, x);
  const Jet q = jet_mul(a, b);
  Jet expect = jet_const(1, 1, 2);
  expect = jet_add(expect, jet_scale(x, 2));
  expect = jet_add(expect, jet_scale(jet_mul(x, x), 2));
  CHECK(q == expect);
  // absorbing zero
  CHECK(jet_mul(a, jet_const(0, 1, 2)).is_zero());
}

TEST_CASE("inversion") {
  const Jet one1 = jet_const(1, 1, 2);
  const Jet x = jet_var(0, 1, 2);
  // invert(1+x) = 1 - x + x^2 at order 2
  Jet inv = jet_invert(jet_add(one1, x));
  Jet expect = jet_add(jet_sub(one1, x), jet_mul(x, x));
  CHECK(inv == expect);
  // invert(2) = 1/2
  CHECK(jet_invert(jet_const(2, 1, 3)) == jet_const(Rational(1, 2), 1, 3));
  // invert(1+x+y) = 1 - x - y + x^2 + 2xy + y^2 at order 2
  const Jet one2 = jet_const(1, 2, 2);
  const Jet u = jet_var(0, 2, 2);
  const Jet v = jet_var(1, 2, 2);
  const Jet w = jet_invert(jet_add(jet_add(one2, u), v));
  Jet e2 = jet_sub(jet_sub(one2, u), v);
  e2 = jet_add(e2, mono(1, {2, 0}, 2, 2));
  e2 = jet_add(e2, mono(2, {1, 1}, 2, 2));
  e2 = jet_add(e2, mono(1, {0, 2}, 2, 2));
  CHECK(w == e2);
  CHECK_THROWS_AS(jet_invert(jet_var(0, 1, 2)), std::domain_error);
}

TEST_CASE("partial derivatives") {
  // d_x(x^2 y) = 2xy
  const Jet f = mono(1, {2, 1}, 2, 3);
  CHECK(jet_partial(f, 0) == mono(2, {1, 1}, 2, 2));
  CHECK(jet_partial(jet_const(5, 2, 3), 0).is_zero());
  // d_y(x + 3y^2) = 6y
  const Jet g = jet_add(jet_var(0, 2, 2), mono(3, {0, 2}, 2, 2));
  CHECK(jet_partial(g, 1) == mono(6, {0, 1}, 2, 1));
  // partials commute
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const Jet a = random_jet(rng, 3, 5, false);
    CHECK(jet_partial(jet_partial(a, 0), 2) ==
          jet_partial(jet_partial(a, 2), 0));
  }
}

TEST_CASE("ring axioms on random jets") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 12; ++trial) {
    const Jet a = random_jet(rng, 3, 4, false);
    const Jet b = random_jet(rng, 3, 4, false);
    const Jet c = random_jet(rng, 3, 4, false);
    CHECK(jet_add(jet_add(a, b), c) == jet_add(a, jet_add(b, c)));
    CHECK(jet_add(a, b) == jet_add(b, a));
    CHECK(jet_mul(a, b) == jet_mul(b, a));
    CHECK(jet_mul(jet_mul(a, b), c) == jet_mul(a, jet_mul(b, c)));
    CHECK(jet_mul(a, jet_add(b, c)) ==
          jet_add(jet_mul(a, b), jet_mul(a, c)));
    // Leibniz
    CHECK(jet_partial(jet_mul(a, b), 1) ==
          jet_add(jet_mul(jet_partial(a, 1), b),
                  jet_mul(a, jet_partial(b, 1))));
  }
}

TEST_CASE("inverse is two-sided identity witness") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 8; ++trial) {
    const Jet a = random_jet(rng, 2, 6, true);
    const Jet inv = jet_invert(a);
    CHECK(jet_mul(a, inv) == jet_const(1, 2, 6));
    CHECK(jet_mul(inv, a) == jet_const(1, 2, 6));
  }
}

TEST_CASE("truncation consistency") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 8; ++trial) {
    const Jet a = random_jet(rng, 3, 6, true);
    const Jet b = random_jet(rng, 3, 6, false);
    for (int m = 0; m <= 4; ++m) {
      CHECK(jet_truncate(jet_mul(a, b), m) ==
            jet_mul(jet_truncate(a, m), jet_truncate(b, m)));
      CHECK(jet_truncate(jet_invert(a), m) ==
            jet_invert(jet_truncate(a, m)));
    }
  }
  CHECK_THROWS_AS(jet_truncate(jet_const(1, 1, 2), 3), std::invalid_argument);
}

TEST_CASE("binomial powers") {
  const Jet a = jet_add(jet_const(1, 1, 6), jet_var(0, 1, 6));
  const Jet sqrt = jet_pow_binomial(a, Rational(1, 2));
  CHECK(jet_mul(sqrt, sqrt) == a);
  CHECK(jet_pow_binomial(a, -1) == jet_invert(a));
  CHECK(jet_pow_binomial(a, 3) == jet_mul(a, jet_mul(a, a)));
  const Jet x32 = jet_pow_binomial(a, Rational(3, 2));
  const Jet x12 = jet_pow_binomial(a, Rational(1, 2));
  CHECK(jet_mul(x32, x12) == jet_mul(a, a));
  CHECK_THROWS_AS(jet_pow_binomial(jet_const(2, 1, 3), Rational(1, 2)),
                  std::domain_error);
}

TEST_CASE("embedding and slicing") {
  // f(x, y) = 3 + x y^2 embedded into 4 variables as (x->v3, y->v1)
  Jet f = jet_add(jet_const(3, 2, 4), mono(1, {1, 2}, 2, 4));
  const Jet emb = jet_embed(f, 4, {3, 1});
  CHECK(jet_coeff(emb, MultiIndex{{0, 2, 0, 1}}) == 1);
  CHECK(jet_eval0(emb) == 3);
  // coefficient of y^2 in f, keeping x: 1*x
  const Jet sl = jet_slice(f, {{1, 2}}, {0});
  CHECK(sl == jet_var(0, 1, 2));
  // coefficient of y^0: the constant 3
  const Jet sl0 = jet_slice(f, {{1, 0}}, {0});
  CHECK(sl0 == jet_const(3, 1, 4));
}

TEST_CASE("monomial enumeration is degree-major and complete") {
  const auto ms = monomials_up_to(2, 2);
  REQUIRE(ms.size() == 6);
  CHECK(ms[0].degree() == 0);
  CHECK(ms[1].degree() == 1);
  CHECK(ms[2].degree() == 1);
  CHECK(ms[3].degree() == 2);
  for (std::size_t i = 1; i < ms.size(); ++i) {
    CHECK(mono_pack(ms[i - 1]) < mono_pack(ms[i]));
  }
}
