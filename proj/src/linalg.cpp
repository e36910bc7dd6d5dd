#include "ambtrac/linalg.hpp"

#include <algorithm>

namespace ambtrac {

int rref_in_place(RatMat& m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index lead = 0;
  int rank = 0;
  for (Eigen::Index col = 0; col < cols && lead < rows; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = lead; r < rows; ++r) {
      if (m(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != lead) m.row(pivot).swap(m.row(lead));
    const Rational inv = 1 / Rational(m(lead, col));
    for (Eigen::Index c = col; c < cols; ++c) m(lead, c) *= inv;
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (r == lead || m(r, col) == 0) continue;
      const Rational f = m(r, col);
      for (Eigen::Index c = col; c < cols; ++c) {
        m(r, c) -= f * m(lead, c);
      }
    }
    ++lead;
    ++rank;
  }
  return rank;
}

int rat_rank(const RatMat& m) {
  RatMat copy = m;
  return rref_in_place(copy);
}

RatMat nullspace(const RatMat& m) {
  RatMat r = m;
  const int rank = rref_in_place(r);
  const Eigen::Index cols = m.cols();
  std::vector<Eigen::Index> pivot_col;
  std::vector<bool> is_pivot(cols, false);
  for (int row = 0; row < rank; ++row) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (r(row, c) != 0) {
        pivot_col.push_back(c);
        is_pivot[c] = true;
        break;
      }
    }
  }
  const Eigen::Index nfree = cols - rank;
  RatMat basis = RatMat::Zero(cols, nfree);
  Eigen::Index out = 0;
  for (Eigen::Index free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    basis(free, out) = 1;
    for (int row = 0; row < rank; ++row) {
      basis(pivot_col[row], out) = -r(row, free);
    }
    ++out;
  }
  return basis;
}

RatVec solve_bareiss(RatMat a, RatVec b) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.size() != n) {
    throw std::invalid_argument("solve_bareiss: shape mismatch");
  }
  // Fraction-free elimination on the augmented integer-scaled system: scale
  // each row by its common denominator first, then run Bareiss.
  RatMat aug(n, n + 1);
  aug.leftCols(n) = a;
  aug.col(n) = b;
  for (Eigen::Index r = 0; r < n; ++r) {
    mpz_class lcm = 1;
    for (Eigen::Index c = 0; c <= n; ++c) {
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(),
              aug(r, c).get_den().get_mpz_t());
    }
    for (Eigen::Index c = 0; c <= n; ++c) aug(r, c) *= Rational(lcm);
  }
  Rational prev = 1;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (aug(k, k) == 0) {
      Eigen::Index swap = -1;
      for (Eigen::Index r = k + 1; r < n; ++r) {
        if (aug(r, k) != 0) {
          swap = r;
          break;
        }
      }
      if (swap < 0) throw SingularMatrixError("solve_bareiss: singular matrix");
      aug.row(k).swap(aug.row(swap));
      prev = -prev;  // row swap flips the sign convention of minors
    }
    for (Eigen::Index r = k + 1; r < n; ++r) {
      for (Eigen::Index c = k + 1; c <= n; ++c) {
        aug(r, c) = (aug(k, k) * aug(r, c) - aug(r, k) * aug(k, c)) / prev;
      }
      aug(r, k) = 0;
    }
    prev = aug(k, k);
  }
  if (aug(n - 1, n - 1) == 0) {
    throw SingularMatrixError("solve_bareiss: singular matrix");
  }
  RatVec x(n);
  for (Eigen::Index r = n - 1; r >= 0; --r) {
    Rational acc = aug(r, n);
    for (Eigen::Index c = r + 1; c < n; ++c) acc -= aug(r, c) * x(c);
    x(r) = acc / aug(r, r);
  }
  return x;
}

std::optional<RatVec> solve_particular(const RatMat& a, const RatVec& b) {
  const Eigen::Index rows = a.rows(), cols = a.cols();
  if (b.size() != rows) {
    throw std::invalid_argument("solve_particular: shape mismatch");
  }
  RatMat aug(rows, cols + 1);
  aug.leftCols(cols) = a;
  aug.col(cols) = b;
  rref_in_place(aug);
  RatVec x = RatVec::Zero(cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    Eigen::Index lead = -1;
    for (Eigen::Index c = 0; c <= cols; ++c) {
      if (aug(r, c) != 0) {
        lead = c;
        break;
      }
    }
    if (lead < 0) continue;
    if (lead == cols) return std::nullopt;  // 0 = nonzero row
    x(lead) = aug(r, cols);
  }
  return x;
}

Signature symmetric_signature(RatMat s) {
  const Eigen::Index n = s.rows();
  if (s.cols() != n) {
    throw std::invalid_argument("symmetric_signature: not square");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (s(i, j) != s(j, i)) {
        throw std::invalid_argument("symmetric_signature: not symmetric");
      }
    }
  }
  Signature sig;
  // Symmetric congruence reduction. When the leading diagonal vanishes but
  // the row is nonzero, fold in a crossing row/column to expose a nonzero
  // diagonal entry (congruence by an elementary matrix). The fold k += src
  // gives diagonal 2 s(k,src) + s(src,src); if that cancels, k -= src gives
  // s(src,src) - 2 s(k,src), and both vanishing would force s(k,src) = 0.
  for (Eigen::Index k = 0; k < n; ++k) {
    if (s(k, k) == 0) {
      Eigen::Index src = -1;
      for (Eigen::Index j = k + 1; j < n; ++j) {
        if (s(k, j) != 0) {
          src = j;
          break;
        }
      }
      if (src < 0) {
        // Rows/cols < k are already eliminated, so row k is zero in the
        // active block: a radical direction.
        ++sig.zero;
        continue;
      }
      for (Eigen::Index c = 0; c < n; ++c) s(k, c) += s(src, c);
      for (Eigen::Index r = 0; r < n; ++r) s(r, k) += s(r, src);
      if (s(k, k) == 0) {
        for (int rep = 0; rep < 2; ++rep) {
          for (Eigen::Index c = 0; c < n; ++c) s(k, c) -= s(src, c);
          for (Eigen::Index r = 0; r < n; ++r) s(r, k) -= s(r, src);
        }
      }
    }
    const Rational d = s(k, k);
    if (d == 0) {
      throw std::logic_error("symmetric_signature: reduction failed");
    }
    if (d > 0) {
      ++sig.positive;
    } else {
      ++sig.negative;
    }
    for (Eigen::Index r = k + 1; r < n; ++r) {
      if (s(r, k) == 0) continue;
      const Rational f = s(r, k) / d;
      for (Eigen::Index c = k; c < n; ++c) s(r, c) -= f * s(k, c);
      for (Eigen::Index c = k; c < n; ++c) s(c, r) = s(r, c);
    }
  }
  return sig;
}

RatMat rat_matmul(const RatMat& a, const RatMat& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("rat_matmul: shape mismatch");
  }
  RatMat out = RatMat::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j) {
        if (b(k, j) == 0) continue;
        out(i, j) += a(i, k) * b(k, j);
      }
    }
  }
  return out;
}

RatMat rat_commutator(const RatMat& a, const RatMat& b) {
  return rat_matmul(a, b) - rat_matmul(b, a);
}

bool RowSpan::insert(RatVec v) {
  if (v.size() != cols_) {
    throw std::invalid_argument("RowSpan::insert: length mismatch");
  }
  // Reduce against the current RREF basis.
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Rational& c = v(pivots_[i]);
    if (c != 0) {
      const Rational f = c;
      v -= f * rows_[i];
    }
  }
  Eigen::Index lead = -1;
  for (Eigen::Index c = 0; c < cols_; ++c) {
    if (v(c) != 0) {
      lead = c;
      break;
    }
  }
  if (lead < 0) return false;
  const Rational inv = 1 / Rational(v(lead));
  v *= inv;
  // Back-reduce existing rows and insert in pivot order.
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Rational& c = rows_[i](lead);
    if (c != 0) {
      const Rational f = c;
      rows_[i] -= f * v;
    }
  }
  auto pos = std::upper_bound(pivots_.begin(), pivots_.end(),
                              static_cast<int>(lead));
  const auto idx = pos - pivots_.begin();
  pivots_.insert(pos, static_cast<int>(lead));
  rows_.insert(rows_.begin() + idx, std::move(v));
  return true;
}

bool RowSpan::contains(RatVec v) const {
  if (v.size() != cols_) {
    throw std::invalid_argument("RowSpan::contains: length mismatch");
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Rational& c = v(pivots_[i]);
    if (c != 0) {
      const Rational f = c;
      v -= f * rows_[i];
    }
  }
  for (Eigen::Index c = 0; c < cols_; ++c) {
    if (v(c) != 0) return false;
  }
  return true;
}

}  // namespace ambtrac
