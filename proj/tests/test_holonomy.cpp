#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "ambtrac/ambient.hpp"
#include "ambtrac/geometry.hpp"
#include "ambtrac/holonomy.hpp"
#include "ambtrac/metrics.hpp"

using namespace ambtrac;

namespace {

AmbientMetricJet build(const TensorJet& g, int m) {
  AmbientBuildOptions opts;
  opts.rho_solve_order = m;
  return build_ambient(g, opts);
}

// Shared generic n = 3 example; the solve dominates test time, so build once.
const AmbientMetricJet& generic3() {
  static const AmbientMetricJet amb =
      build(random_rational_metric(3, 8, 1, {0, 1, 2}), 4);
  return amb;
}

const AmbientCurvatureData& generic3_data() {
  static const AmbientCurvatureData data(generic3(), 4);
  return data;
}

bool is_zero(const RatMat& m) {
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0) return false;
  return true;
}

bool mats_equal(const RatMat& a, const RatMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return is_zero(a - b);
}

RatVec flatten(const RatMat& m) {
  const int d = static_cast<int>(m.rows());
  RatVec v(d * d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) v(r * d + c) = m(r, c);
  return v;
}

int chart_of(int frame_slot, int dim) {
  if (frame_slot == 0) return dim - 1;
  if (frame_slot == 1) return 0;
  return frame_slot - 1;
}

bool nondecreasing(const std::vector<int>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] < v[i - 1]) return false;
  return true;
}

}  // namespace

TEST_CASE("flat ambient has trivial holonomy") {
  const AmbientMetricJet amb = build(flat_metric(3, 8), 4);
  const HolonomySpan ah = ambient_holonomy(amb, 4);
  const HolonomySpan th = tractor_holonomy(amb, 4);

  CHECK(ah.matrix_dim == 5);
  CHECK(ah.span.dim() == 0);
  CHECK(th.span.dim() == 0);
  CHECK(ah.dim_history == std::vector<int>{0, 0, 0});
  CHECK(ah.k_reached == 4);
  CHECK(ah.stabilized);
  CHECK(!ah.budget_exhausted);

  const SpanComparison cmp = compare_spans(th, ah);
  CHECK(cmp.verdict == SpanRelation::kEqual);
  CHECK(!cmp.witness.has_value());
}

TEST_CASE("round sphere ambient is flat within the computed window") {
  // The ambient germ of the round sphere is a flat cone, so every iterated
  // curvature value vanishes identically.
  const AmbientMetricJet amb = build(sphere_metric(3, 12), 5);
  const HolonomySpan ah = ambient_holonomy(amb, 5);
  CHECK(ah.span.dim() == 0);
  CHECK(ah.dim_history == std::vector<int>{0, 0, 0, 0});
  CHECK(ah.stabilized);

  const AmbientCurvatureData data(amb, 5);
  CHECK(is_zero(iterated_curvature(data, {2, 3})));
  CHECK(is_zero(iterated_curvature(data, {0, 2, 0, 3, 4})));
}

TEST_CASE("ambient frame matrix is the cone metric at the base point") {
  const AmbientFrame f = ambient_frame(generic3());
  CHECK(f.n == 3);
  CHECK(f.chart_index == std::vector<int>{4, 0, 1, 2, 3});
  CHECK(f.h.rows() == 5);
  CHECK(f.h(0, 1) == 1);
  CHECK(f.h(1, 0) == 1);
  CHECK(f.h(0, 0) == 0);
  CHECK(f.h(1, 1) == 0);
  for (int i = 0; i < 3; ++i) {
    CHECK(f.h(0, 2 + i) == 0);
    CHECK(f.h(1, 2 + i) == 0);
    for (int j = 0; j < 3; ++j)
      CHECK(f.h(2 + i, 2 + j) == Rational(i == j ? 1 : 0));
  }
  CHECK(symmetric_signature(f.h) == Signature{4, 1, 0});
}

TEST_CASE("iterated curvature matches direct tensor evaluation") {
  const AmbientMetricJet& amb = generic3();
  const AmbientCurvatureData& data = generic3_data();

  const TensorJet ga = amb.assemble(4, false);
  const TensorJet ginv = metric_inverse(ga);
  const TensorJet gamma = christoffel(ga, ginv);
  const TensorJet riem = riemann(gamma);

  bool some_word_nonzero = false;
  for (int a : {0, 2, 3, 4})
    for (int b : {0, 2, 3, 4}) {
      const RatMat e = iterated_curvature(data, {a, b});
      if (!is_zero(e)) some_word_nonzero = true;
      for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 5; ++c)
          CHECK(e(r, c) ==
                jet_eval0(riem.at({chart_of(r, 5), chart_of(c, 5),
                                   chart_of(a, 5), chart_of(b, 5)})));
    }
  CHECK(some_word_nonzero);

  const TensorJet driem = covariant_derivative(riem, gamma);
  const RatMat e3 = iterated_curvature(data, {2, 3, 4});
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c)
      CHECK(e3(r, c) ==
            jet_eval0(driem.at({chart_of(4, 5), chart_of(r, 5), chart_of(c, 5),
                                chart_of(2, 5), chart_of(3, 5)})));
}

TEST_CASE("dilation direction reduces every word") {
  const AmbientCurvatureData& data = generic3_data();

  // The curvature pair annihilates T exactly.
  for (int a : {0, 1, 2, 3, 4}) {
    CHECK(is_zero(iterated_curvature(data, {1, a})));
    CHECK(is_zero(iterated_curvature(data, {a, 1})));
  }

  // A derivative-slot T rescales the word with that letter removed by
  // -(k-1), in any derivative position.
  const RatMat e2 = iterated_curvature(data, {0, 2});
  CHECK(mats_equal(iterated_curvature(data, {0, 2, 1}), Rational(-2) * e2));
  const RatMat e3 = iterated_curvature(data, {0, 2, 3});
  CHECK(mats_equal(iterated_curvature(data, {0, 2, 3, 1}), Rational(-3) * e3));
  CHECK(mats_equal(iterated_curvature(data, {0, 2, 1, 3}), Rational(-3) * e3));
  const RatMat f3 = iterated_curvature(data, {2, 4, 3});
  CHECK(mats_equal(iterated_curvature(data, {2, 4, 1, 3}), Rational(-3) * f3));

  // A curvature-slot T inside a differentiated word trades the derivative
  // direction into the vacated slot: (nabla_c R)(T, b) = -R(c, b).
  CHECK(mats_equal(iterated_curvature(data, {1, 2, 4}),
                   iterated_curvature(data, {2, 4})));
  CHECK(mats_equal(iterated_curvature(data, {2, 1, 4}),
                   Rational(-1) * iterated_curvature(data, {2, 4})));
}

TEST_CASE("generic three dimensional spans are skew and nested") {
  const AmbientMetricJet& amb = generic3();
  const HolonomySpan ah = ambient_holonomy(amb, 4);
  const HolonomySpan th = tractor_holonomy(amb, 4);

  CHECK(ah.k_reached == 4);
  CHECK(ah.dim_history.size() == 3);
  CHECK(nondecreasing(ah.dim_history));
  CHECK(nondecreasing(th.dim_history));
  CHECK(ah.span.dim() >= 1);
  CHECK(ah.span.dim() <= 10);
  CHECK(th.span.dim() <= ah.span.dim());

  const AmbientFrame f = ambient_frame(amb);
  CHECK(skewness_check(ah, f.h));
  CHECK(skewness_check(th, f.h));

  // Every tangential word is also an ambient word, so containment is
  // structural; equality is the theorem under test at scenario scale.
  const SpanComparison cmp = compare_spans(th, ah);
  const bool contained = cmp.verdict == SpanRelation::kEqual ||
                         cmp.verdict == SpanRelation::kAInB;
  CHECK(contained);

  if (ah.stabilized) CHECK(commutator_closure_check(ah));
}

TEST_CASE("transverse filter bounds the rho directions in even dimension") {
  CHECK(transverse_count_filter({0, 2}, 3, Parity::kOdd));
  CHECK(transverse_count_filter({0, 0, 0, 0}, 5, Parity::kOdd));
  CHECK(!transverse_count_filter({0, 2}, 4, Parity::kEven));
  CHECK(!transverse_count_filter({2, 3, 0, 5}, 4, Parity::kEven));
  CHECK(transverse_count_filter({2, 3, 4, 5}, 4, Parity::kEven));
  CHECK(transverse_count_filter({0, 2, 3}, 6, Parity::kEven));
  CHECK(!transverse_count_filter({0, 2, 0}, 6, Parity::kEven));

  const AmbientMetricJet amb4 = build(flat_metric(4, 6), 2);
  const AmbientCurvatureData d4(amb4, 4);
  CHECK_THROWS_AS((void)iterated_curvature(d4, {0, 2}), std::invalid_argument);
  CHECK(is_zero(iterated_curvature(d4, {2, 3})));

  const HolonomySpan ah4 = ambient_holonomy(amb4, 4);
  CHECK(ah4.span.dim() == 0);
  CHECK(ah4.stabilized);
}

TEST_CASE("einstein product span is tangential in dimension four") {
  const AmbientMetricJet amb = build(product_sphere_metric(6), 2);
  const HolonomySpan ah = ambient_holonomy(amb, 4);
  const HolonomySpan th = tractor_holonomy(amb, 4);

  CHECK(ah.span.dim() >= 1);
  CHECK(ah.span.dim() <= 15);
  CHECK(nondecreasing(ah.dim_history));
  CHECK(skewness_check(ah, ambient_frame(amb).h));

  // At n = 4 the filter admits no transverse letters at all, so the two
  // enumerations run over identical words.
  const SpanComparison cmp = compare_spans(th, ah);
  CHECK(cmp.verdict == SpanRelation::kEqual);
}

TEST_CASE("curvature data refuses budgets beyond the solved jet") {
  const AmbientMetricJet amb = build(flat_metric(3, 10), 4);
  CHECK_THROWS_AS(AmbientCurvatureData(amb, 1), std::invalid_argument);
  // rho depth: odd dimension caps at the solved rho order
  CHECK_THROWS_AS(AmbientCurvatureData(amb, 5), std::invalid_argument);
  const AmbientCurvatureData ok(amb, 4);
  CHECK(ok.k_max() == 4);
  CHECK(ok.dim() == 5);

  const AmbientMetricJet shallow = build(flat_metric(3, 6), 2);
  CHECK_THROWS_AS(AmbientCurvatureData(shallow, 3), std::invalid_argument);

  // Even dimension: the tangential window is the only cap.
  const AmbientMetricJet amb4 = build(flat_metric(4, 6), 2);
  const AmbientCurvatureData deep4(amb4, 4);
  CHECK(deep4.k_max() == 4);
  CHECK_THROWS_AS(AmbientCurvatureData(amb4, 5), std::invalid_argument);

  CHECK_THROWS_AS((void)iterated_curvature(ok, {2}), std::invalid_argument);
  CHECK_THROWS_AS((void)iterated_curvature(ok, {2, 3, 4, 2, 3}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)iterated_curvature(ok, {2, 7}), std::invalid_argument);
}

TEST_CASE("span comparison classifies containment and reports witnesses") {
  RatMat e = RatMat::Zero(2, 2);
  e(0, 1) = 1;
  RatMat f = RatMat::Zero(2, 2);
  f(1, 0) = 1;

  HolonomySpan small;
  small.matrix_dim = 2;
  small.span = RowSpan(4);
  small.span.insert(flatten(e));

  HolonomySpan big = small;
  big.span.insert(flatten(f));

  HolonomySpan other;
  other.matrix_dim = 2;
  other.span = RowSpan(4);
  other.span.insert(flatten(f));

  const SpanComparison ab = compare_spans(small, big);
  CHECK(ab.verdict == SpanRelation::kAInB);
  CHECK(ab.dim_a == 1);
  CHECK(ab.dim_b == 2);
  REQUIRE(ab.witness.has_value());
  CHECK(big.span.contains(flatten(*ab.witness)));
  CHECK(!small.span.contains(flatten(*ab.witness)));

  const SpanComparison ba = compare_spans(big, small);
  CHECK(ba.verdict == SpanRelation::kBInA);
  REQUIRE(ba.witness.has_value());
  CHECK(!small.span.contains(flatten(*ba.witness)));

  const SpanComparison cross = compare_spans(small, other);
  CHECK(cross.verdict == SpanRelation::kIncomparable);
  REQUIRE(cross.witness.has_value());
  const bool in_a = small.span.contains(flatten(*cross.witness));
  const bool in_b = other.span.contains(flatten(*cross.witness));
  CHECK(in_a != in_b);

  const SpanComparison same = compare_spans(big, big);
  CHECK(same.verdict == SpanRelation::kEqual);
  CHECK(!same.witness.has_value());

  HolonomySpan mismatched;
  mismatched.matrix_dim = 3;
  mismatched.span = RowSpan(9);
  CHECK_THROWS_AS(compare_spans(small, mismatched), std::invalid_argument);
}

TEST_CASE("commutator closure and skewness checks on hand built spans") {
  RatMat e = RatMat::Zero(2, 2);
  e(0, 1) = 1;
  RatMat f = RatMat::Zero(2, 2);
  f(1, 0) = 1;
  RatMat h = RatMat::Zero(2, 2);
  h(0, 0) = 1;
  h(1, 1) = -1;

  HolonomySpan open;
  open.matrix_dim = 2;
  open.span = RowSpan(4);
  open.span.insert(flatten(e));
  open.span.insert(flatten(f));
  CHECK(!commutator_closure_check(open));  // [e, f] escapes

  HolonomySpan sl2 = open;
  sl2.span.insert(flatten(h));
  CHECK(commutator_closure_check(sl2));

  RatMat id2 = RatMat::Zero(2, 2);
  id2(0, 0) = 1;
  id2(1, 1) = 1;
  HolonomySpan raiser;
  raiser.matrix_dim = 2;
  raiser.span = RowSpan(4);
  raiser.span.insert(flatten(e));
  CHECK(!skewness_check(raiser, id2));  // e + e^T is not zero

  RatMat split = RatMat::Zero(2, 2);
  split(0, 1) = 1;
  split(1, 0) = 1;
  HolonomySpan boost;
  boost.matrix_dim = 2;
  boost.span = RowSpan(4);
  boost.span.insert(flatten(h));
  CHECK(skewness_check(boost, split));  // h^T split + split h = 0
}
