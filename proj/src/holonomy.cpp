#include "ambtrac/holonomy.hpp"

#include <stdexcept>
#include <utility>

#include "ambtrac/geometry.hpp"

namespace ambtrac {

namespace {

// Frame slot -> ambient chart coordinate: transverse d/drho sits at chart
// index n+1, T at the tau index 0, tangential d/dx^i at chart index i. At z
// every frame vector equals the corresponding chart basis vector (t = 1), so
// contraction is index relabeling.
int chart_of(int frame_slot, int dim) {
  if (frame_slot == 0) return dim - 1;
  if (frame_slot == 1) return 0;
  return frame_slot - 1;
}

RatVec flatten(const RatMat& m) {
  const int d = static_cast<int>(m.rows());
  RatVec v(d * d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) v(r * d + c) = m(r, c);
  return v;
}

RatMat unflatten(const RatVec& v, int d) {
  RatMat m(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) m(r, c) = v(r * d + c);
  return m;
}

}  // namespace

AmbientFrame ambient_frame(const AmbientMetricJet& amb) {
  const int n = amb.n;
  const int d = n + 2;
  AmbientFrame f;
  f.n = n;
  f.chart_index.resize(d);
  for (int a = 0; a < d; ++a) f.chart_index[a] = chart_of(a, d);
  // g(zeta_0, zeta_1) = t g_{rho t} = t^2 = 1 at z; the tangential block is
  // the base metric at the origin; everything else vanishes on the cone.
  f.h = RatMat::Zero(d, d);
  f.h(0, 1) = 1;
  f.h(1, 0) = 1;
  const TensorJet& g0 = amb.coeffs.at(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      f.h(2 + i, 2 + j) = jet_eval0(g0.at({i, j}));
  return f;
}

AmbientCurvatureData::AmbientCurvatureData(const AmbientMetricJet& amb,
                                           int k_max)
    : n_(amb.n), k_max_(k_max), parity_(amb.parity) {
  if (k_max < 2)
    throw std::invalid_argument(
        "curvature data: truncation must cover at least the curvature pair");
  if (k_max > amb.jet_order - amb.rho_solve_order)
    throw std::invalid_argument(
        "curvature data: jet budget exhausted, truncation would read "
        "unsolved tangential slots");
  if (amb.parity == Parity::kOdd && k_max > amb.rho_solve_order)
    throw std::invalid_argument(
        "curvature data: jet budget exhausted, truncation would read "
        "unsolved rho slots");

  const TensorJet ga = amb.assemble(k_max, false);
  const TensorJet ginv = metric_inverse(ga);
  const TensorJet gamma = christoffel(ga, ginv);
  TensorJet cur = riemann(gamma);
  for (int j = 0; j + 2 <= k_max; ++j) {
    std::vector<Rational> flat;
    flat.reserve(cur.components().size());
    for (const Jet& c : cur.components()) flat.push_back(jet_eval0(c));
    vals_.push_back(std::move(flat));
    if (j + 3 <= k_max) cur = covariant_derivative(cur, gamma);
  }
}

const Rational& AmbientCurvatureData::value(
    int deriv, const std::vector<int>& chart_idx) const {
  if (deriv < 0 || deriv >= static_cast<int>(vals_.size()))
    throw std::out_of_range("curvature data: derivative depth not assembled");
  const int d = dim();
  if (static_cast<int>(chart_idx.size()) != deriv + 4)
    throw std::invalid_argument("curvature data: index rank mismatch");
  std::size_t off = 0;
  for (int i : chart_idx) {
    if (i < 0 || i >= d)
      throw std::out_of_range("curvature data: chart index out of range");
    off = off * d + static_cast<std::size_t>(i);
  }
  return vals_[deriv][off];
}

bool transverse_count_filter(const std::vector<int>& word, int n,
                             Parity parity) {
  if (parity == Parity::kOdd) return true;
  int transverse = 0;
  for (int a : word)
    if (a == 0) ++transverse;
  return transverse <= n / 2 - 2;
}

RatMat iterated_curvature(const AmbientCurvatureData& data,
                          const std::vector<int>& word) {
  const int k = static_cast<int>(word.size());
  if (k < 2)
    throw std::invalid_argument(
        "iterated curvature: word needs at least the curvature pair");
  if (k > data.k_max())
    throw std::invalid_argument("iterated curvature: word exceeds jet budget");
  for (int a : word)
    if (a < 0 || a > data.n() + 1)
      throw std::invalid_argument("iterated curvature: direction out of range");
  if (!transverse_count_filter(word, data.n(), data.parity()))
    throw std::invalid_argument(
        "iterated curvature: too many transverse directions for even "
        "dimension");

  const int d = data.dim();
  const int deriv = k - 2;
  // Stored slot order is derivative slots outermost first, then row l,
  // column k, curvature pair (i, j); the word lists the pair first and
  // derivative directions innermost first.
  std::vector<int> idx(deriv + 4);
  for (int p = 0; p < deriv; ++p) idx[p] = chart_of(word[k - 1 - p], d);
  idx[deriv + 2] = chart_of(word[0], d);
  idx[deriv + 3] = chart_of(word[1], d);
  // Row and column run over frame slots as well; at z the frame is a
  // permutation of the chart basis, so the change of basis is a relabeling.
  RatMat m(d, d);
  for (int r = 0; r < d; ++r) {
    idx[deriv] = chart_of(r, d);
    for (int c = 0; c < d; ++c) {
      idx[deriv + 1] = chart_of(c, d);
      m(r, c) = data.value(deriv, idx);
    }
  }
  return m;
}

std::vector<RatMat> HolonomySpan::basis_matrices() const {
  std::vector<RatMat> out;
  for (const RatVec& row : span.basis()) out.push_back(unflatten(row, matrix_dim));
  return out;
}

namespace {

HolonomySpan accumulate_span(const AmbientMetricJet& amb, int k_max,
                             bool tangential_only) {
  const AmbientCurvatureData data(amb, k_max);
  const int d = amb.n + 2;

  HolonomySpan out;
  out.n = amb.n;
  out.matrix_dim = d;
  out.span = RowSpan(d * d);

  // Direction 1 (= T) is omitted: the curvature pair annihilates T, and any
  // longer word containing T reduces to rational multiples of shorter words,
  // so enumerating it would not change the span.
  std::vector<int> alphabet;
  if (!tangential_only) alphabet.push_back(0);
  for (int i = 2; i <= amb.n + 1; ++i) alphabet.push_back(i);
  const int na = static_cast<int>(alphabet.size());

  for (int k = 2; k <= k_max; ++k) {
    std::vector<int> pos(k, 0);
    for (;;) {
      std::vector<int> word(k);
      for (int i = 0; i < k; ++i) word[i] = alphabet[pos[i]];
      if (transverse_count_filter(word, amb.n, amb.parity))
        out.span.insert(flatten(iterated_curvature(data, word)));
      int p = k - 1;
      while (p >= 0 && pos[p] == na - 1) pos[p--] = 0;
      if (p < 0) break;
      ++pos[p];
    }
    out.dim_history.push_back(out.span.dim());
  }
  out.k_reached = k_max;

  const std::size_t hs = out.dim_history.size();
  const bool flat_tail =
      hs >= 2 && out.dim_history[hs - 1] == out.dim_history[hs - 2];
  out.stabilized = flat_tail && commutator_closure_check(out);
  out.budget_exhausted = !out.stabilized;
  return out;
}

}  // namespace

HolonomySpan ambient_holonomy(const AmbientMetricJet& amb, int k_max) {
  return accumulate_span(amb, k_max, false);
}

HolonomySpan tractor_holonomy(const AmbientMetricJet& amb, int k_max) {
  return accumulate_span(amb, k_max, true);
}

SpanComparison compare_spans(const HolonomySpan& a, const HolonomySpan& b) {
  if (a.matrix_dim != b.matrix_dim)
    throw std::invalid_argument("compare_spans: matrix dimensions differ");
  SpanComparison out;
  out.dim_a = a.span.dim();
  out.dim_b = b.span.dim();

  std::optional<RatVec> only_in_a;
  for (const RatVec& row : a.span.basis())
    if (!b.span.contains(row)) {
      only_in_a = row;
      break;
    }
  std::optional<RatVec> only_in_b;
  for (const RatVec& row : b.span.basis())
    if (!a.span.contains(row)) {
      only_in_b = row;
      break;
    }

  if (!only_in_a && !only_in_b) {
    out.verdict = SpanRelation::kEqual;
  } else if (!only_in_a) {
    out.verdict = SpanRelation::kAInB;
    out.witness = unflatten(*only_in_b, a.matrix_dim);
  } else if (!only_in_b) {
    out.verdict = SpanRelation::kBInA;
    out.witness = unflatten(*only_in_a, a.matrix_dim);
  } else {
    out.verdict = SpanRelation::kIncomparable;
    out.witness = unflatten(*only_in_a, a.matrix_dim);
  }
  return out;
}

bool commutator_closure_check(const HolonomySpan& s) {
  const std::vector<RatMat> basis = s.basis_matrices();
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!s.span.contains(flatten(rat_commutator(basis[i], basis[j]))))
        return false;
  return true;
}

bool skewness_check(const HolonomySpan& s, const RatMat& h) {
  for (const RatMat& e : s.basis_matrices()) {
    RatMat et = e.transpose();
    RatMat lhs = rat_matmul(et, h) + rat_matmul(h, e);
    for (int r = 0; r < lhs.rows(); ++r)
      for (int c = 0; c < lhs.cols(); ++c)
        if (lhs(r, c) != 0) return false;
  }
  return true;
}

}  // namespace ambtrac
