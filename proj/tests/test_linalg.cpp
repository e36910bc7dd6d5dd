#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ambtrac/linalg.hpp"

using namespace ambtrac;

namespace {

RatMat mat(int r, int c, std::initializer_list<int> vals) {
  RatMat m(r, c);
  auto it = vals.begin();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = *it++;
  return m;
}

RatVec vec(std::initializer_list<int> vals) {
  RatVec v(static_cast<int>(vals.size()));
  int i = 0;
  for (int x : vals) v(i++) = x;
  return v;
}

RatMat random_mat(std::mt19937_64& rng, int r, int c) {
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 3);
  RatMat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = rat_frac(num(rng), den(rng));
  return m;
}

}  // namespace

TEST_CASE("rref and rank") {
  RatMat m = mat(3, 3, {1, 2, 3, 2, 4, 6, 1, 1, 1});
  CHECK(rat_rank(m) == 2);
  RatMat id = mat(2, 2, {1, 0, 0, 1});
  RatMat c = id;
  CHECK(rref_in_place(c) == 2);
  CHECK(c == id);
  RatMat z = RatMat::Zero(2, 3);
  CHECK(rat_rank(z) == 0);
}

TEST_CASE("nullspace basis spans the kernel") {
  RatMat m = mat(2, 3, {1, 0, 1, 0, 1, -1});
  RatMat ns = nullspace(m);
  REQUIRE(ns.cols() == 1);
  RatVec prod = m * RatVec(ns.col(0));
  for (int i = 0; i < prod.size(); ++i) CHECK(prod(i) == 0);
  // full-rank square matrix has trivial kernel
  CHECK(nullspace(mat(2, 2, {1, 1, 0, 1})).cols() == 0);
}

TEST_CASE("bareiss solve") {
  RatMat a = mat(3, 3, {2, 1, -1, -3, -1, 2, -2, 1, 2});
  RatVec b = vec({8, -11, -3});
  RatVec x = solve_bareiss(a, b);
  CHECK(x(0) == 2);
  CHECK(x(1) == 3);
  CHECK(x(2) == -1);
  CHECK_THROWS_AS(solve_bareiss(mat(2, 2, {1, 2, 2, 4}), vec({1, 1})),
                  SingularMatrixError);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    RatMat m = random_mat(rng, 5, 5);
    if (rat_rank(m) < 5) continue;
    RatVec rhs = random_mat(rng, 5, 1).col(0);
    RatVec sol = solve_bareiss(m, rhs);
    RatVec back = m * sol;
    for (int i = 0; i < 5; ++i) CHECK(back(i) == rhs(i));
  }
}

TEST_CASE("particular solutions") {
  // consistent underdetermined system
  RatMat a = mat(2, 3, {1, 1, 0, 0, 1, 1});
  RatVec b = vec({3, 5});
  auto x = solve_particular(a, b);
  REQUIRE(x.has_value());
  RatVec back = a * *x;
  CHECK(back(0) == 3);
  CHECK(back(1) == 5);
  // inconsistent system
  RatMat bad = mat(2, 2, {1, 1, 2, 2});
  CHECK_FALSE(solve_particular(bad, vec({1, 3})).has_value());
}

TEST_CASE("symmetric signature") {
  CHECK(symmetric_signature(mat(2, 2, {1, 0, 0, -1})) ==
        Signature{1, 1, 0});
  CHECK(symmetric_signature(mat(3, 3, {2, 0, 0, 0, 3, 0, 0, 0, 0})) ==
        Signature{2, 0, 1});
  // hyperbolic plane: zero diagonal, signature (1,1)
  CHECK(symmetric_signature(mat(2, 2, {0, 1, 1, 0})) == Signature{1, 1, 0});
  // congruence invariance on random symmetric matrices
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 6; ++trial) {
    RatMat g = random_mat(rng, 4, 4);
    RatMat s = g + RatMat(g.transpose());
    RatMat p = random_mat(rng, 4, 4);
    if (rat_rank(p) < 4) continue;
    RatMat conj = rat_matmul(rat_matmul(RatMat(p.transpose()), s), p);
    CHECK(symmetric_signature(s) == symmetric_signature(conj));
  }
}

TEST_CASE("row span deduplicates and is insertion-order canonical") {
  RatVec e = vec({1, 2, 0, 5});
  RowSpan s(4);
  CHECK(s.insert(e));
  CHECK_FALSE(s.insert(Rational(2) * e));
  CHECK_FALSE(s.insert(e + e));
  CHECK(s.dim() == 1);
  CHECK(s.contains(Rational(-7) * e));
  CHECK_FALSE(s.contains(vec({1, 2, 1, 5})));

  std::mt19937_64 rng(31);
  std::vector<RatVec> vs;
  for (int i = 0; i < 6; ++i) vs.push_back(random_mat(rng, 1, 5).row(0));
  RowSpan fwd(5);
  for (const auto& v : vs) fwd.insert(v);
  RowSpan rev(5);
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) rev.insert(*it);
  REQUIRE(fwd.dim() == rev.dim());
  for (int i = 0; i < fwd.dim(); ++i) {
    CHECK(fwd.basis()[i] == rev.basis()[i]);
    CHECK(fwd.pivots()[i] == rev.pivots()[i]);
  }
}

TEST_CASE("commutator") {
  RatMat a = mat(2, 2, {0, 1, 0, 0});
  RatMat b = mat(2, 2, {0, 0, 1, 0});
  RatMat h = rat_commutator(a, b);
  CHECK(h(0, 0) == 1);
  CHECK(h(1, 1) == -1);
  CHECK(h(0, 1) == 0);
  CHECK(h(1, 0) == 0);
}
