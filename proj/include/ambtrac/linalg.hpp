#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "ambtrac/rational.hpp"

namespace ambtrac {

using RatMat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RatVec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reduced row echelon form in place, deterministic first-nonzero pivoting.
// Returns the rank.
int rref_in_place(RatMat& m);

int rat_rank(const RatMat& m);

// Right nullspace; columns form the canonical basis obtained from the RREF
// (free variables set to 1 in ascending column order).
RatMat nullspace(const RatMat& m);

// Exact solve of a square nonsingular system by fraction-free Bareiss
// elimination with back substitution. Throws SingularMatrixError.
RatVec solve_bareiss(RatMat a, RatVec b);

// Particular solution of a (possibly rectangular) consistent system, free
// variables zero; nullopt when inconsistent.
std::optional<RatVec> solve_particular(const RatMat& a, const RatVec& b);

// Sylvester signature (positives, negatives, zeros) of a symmetric matrix by
// exact symmetric congruence reduction.
struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  bool operator==(const Signature&) const = default;
};
Signature symmetric_signature(RatMat s);

RatMat rat_matmul(const RatMat& a, const RatMat& b);
RatMat rat_commutator(const RatMat& a, const RatMat& b);

// Incrementally maintained row space over the rationals. The basis is kept
// in reduced row echelon form, which is canonical for the subspace: the
// final basis is independent of insertion order.
class RowSpan {
 public:
  explicit RowSpan(int cols) : cols_(cols) {}

  // Returns true when the vector enlarged the span.
  bool insert(RatVec v);
  bool contains(RatVec v) const;

  int dim() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }
  const std::vector<RatVec>& basis() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }

 private:
  int cols_;
  std::vector<RatVec> rows_;   // RREF rows, pivot columns strictly ascending
  std::vector<int> pivots_;
};

// Span comparison verdicts used by the holonomy layer.
enum class SpanRelation { kEqual, kAInB, kBInA, kIncomparable };

}  // namespace ambtrac
