#pragma once

#include <optional>
#include <vector>

#include "ambtrac/ambient.hpp"
#include "ambtrac/linalg.hpp"

namespace ambtrac {

// Fixed frame at the germ z: zeta_0 = d/drho (the only transverse direction),
// zeta_1 = T = t d/dt (the dilation generator), zeta_{1+i} = d/dx^i. Every
// frame field commutes with T, so contraction values at z carry no t-weight.
struct AmbientFrame {
  int n = 0;
  std::vector<int> chart_index;  // frame slot -> ambient chart coordinate
  RatMat h;                      // ambient metric at z in the frame basis
};
AmbientFrame ambient_frame(const AmbientMetricJet& amb);

// Values at z of the ambient curvature and its iterated covariant
// derivatives, with the Levi-Civita connection coupling every slot. The
// ambient metric is assembled at total truncation k_max and without the
// trace-completion term; construction refuses budgets that would read
// unsolved jet slots.
class AmbientCurvatureData {
 public:
  AmbientCurvatureData(const AmbientMetricJet& amb, int k_max);

  int n() const { return n_; }
  int dim() const { return n_ + 2; }
  int k_max() const { return k_max_; }
  Parity parity() const { return parity_; }

  // (nabla^deriv Rm)(chart slots) at z. Slot order: deriv derivative slots
  // outermost first, then l (endomorphism row), k (column), then the
  // curvature pair.
  const Rational& value(int deriv, const std::vector<int>& chart_idx) const;

 private:
  int n_ = 0;
  int k_max_ = 0;
  Parity parity_ = Parity::kOdd;
  std::vector<std::vector<Rational>> vals_;  // [deriv][row-major offset]
};

// Even dimensions admit at most n/2 - 2 transverse (index 0) directions per
// word; odd dimensions are unconstrained.
bool transverse_count_filter(const std::vector<int>& word, int n,
                             Parity parity);

// (nabla^{k-2} R)(zeta_{A_1}, ..., zeta_{A_k}) at z as a frame-basis matrix.
// The first two word letters fill the curvature pair; the remaining letters
// are nested derivative directions, innermost (A_3) to outermost (A_k).
// Throws on an empty budget or a transverse filter violation.
RatMat iterated_curvature(const AmbientCurvatureData& data,
                          const std::vector<int>& word);

struct HolonomySpan {
  int n = 0;
  int matrix_dim = 0;
  RowSpan span{0};               // canonical row space of flattened matrices
  std::vector<int> dim_history;  // dim after each word length 2..k_reached
  int k_reached = 0;
  bool stabilized = false;       // flat final step and commutator-closed
  bool budget_exhausted = false;

  std::vector<RatMat> basis_matrices() const;
};

// Span of iterated curvature endomorphisms over all filter-passing words in
// the directions {0, 2..n+1}. Direction 1 (T) is omitted because it never
// enlarges the span: the bare curvature pair annihilates T, and in longer
// words a T letter reduces the value to rational multiples of shorter words
// (factor -(k-1) in a derivative slot).
HolonomySpan ambient_holonomy(const AmbientMetricJet& amb, int k_max);

// Same accumulation restricted to tangential words, directions {2..n+1}.
HolonomySpan tractor_holonomy(const AmbientMetricJet& amb, int k_max);

struct SpanComparison {
  SpanRelation verdict = SpanRelation::kEqual;
  int dim_a = 0;
  int dim_b = 0;
  std::optional<RatMat> witness;  // element of exactly one span, if unequal
};
SpanComparison compare_spans(const HolonomySpan& a, const HolonomySpan& b);

bool commutator_closure_check(const HolonomySpan& s);

// E^T h + h E = 0 for every basis element.
bool skewness_check(const HolonomySpan& s, const RatMat& h);

}  // namespace ambtrac
