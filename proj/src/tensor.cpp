#include "ambtrac/tensor.hpp"

#include <stdexcept>

namespace ambtrac {

TensorJet::TensorJet(int dim, std::vector<Variance> variance, int order)
    : dim_(dim), order_(order), variance_(std::move(variance)) {
  if (dim <= 0) throw std::invalid_argument("TensorJet: nonpositive dimension");
  std::size_t count = 1;
  for (std::size_t i = 0; i < variance_.size(); ++i) count *= dim_;
  comp_.assign(count, jet_const(0, dim_, order_));
}

std::size_t TensorJet::offset(const std::vector<int>& idx) const {
  if (static_cast<int>(idx.size()) != rank()) {
    throw std::invalid_argument("TensorJet: index rank mismatch");
  }
  std::size_t off = 0;
  for (int i : idx) {
    if (i < 0 || i >= dim_) throw std::out_of_range("TensorJet: index range");
    off = off * dim_ + i;
  }
  return off;
}

void TensorJet::set(const std::vector<int>& idx, Jet value) {
  if (value.nvars() != dim_) {
    throw std::invalid_argument("TensorJet: component variable count");
  }
  comp_[offset(idx)] = std::move(value);
}

void TensorJet::settle_order() {
  int o = kMaxOrder;
  for (const Jet& j : comp_) o = std::min(o, j.order());
  order_ = o;
}

bool TensorJet::operator==(const TensorJet& other) const {
  return dim_ == other.dim_ && order_ == other.order_ &&
         variance_ == other.variance_ && comp_ == other.comp_;
}

bool next_index(std::vector<int>& idx, int dim) {
  for (int slot = static_cast<int>(idx.size()) - 1; slot >= 0; --slot) {
    if (++idx[slot] < dim) return true;
    idx[slot] = 0;
  }
  return false;
}

bool tensor_check_symmetries(const TensorJet& t) {
  for (const PairSymmetry& sym : t.symmetries) {
    std::vector<int> idx(t.rank(), 0);
    do {
      std::vector<int> swapped = idx;
      std::swap(swapped[sym.slot_a], swapped[sym.slot_b]);
      const Jet& a = t.at(idx);
      const Jet b = sym.antisymmetric ? jet_neg(t.at(swapped)) : t.at(swapped);
      if (!(a == b)) return false;
    } while (next_index(idx, t.dim()));
  }
  return true;
}

namespace {

void check_shape(const TensorJet& a, const TensorJet& b) {
  if (a.dim() != b.dim() || a.variance() != b.variance()) {
    throw std::invalid_argument("tensor op: chart mismatch");
  }
}

}  // namespace

TensorJet tensor_add(const TensorJet& a, const TensorJet& b) {
  check_shape(a, b);
  TensorJet out(a.dim(), a.variance(), std::min(a.order(), b.order()));
  std::vector<int> idx(a.rank(), 0);
  do {
    out.at(idx) = jet_add(a.at(idx), b.at(idx));
  } while (next_index(idx, a.dim()));
  return out;
}

TensorJet tensor_sub(const TensorJet& a, const TensorJet& b) {
  return tensor_add(a, tensor_neg(b));
}

TensorJet tensor_neg(const TensorJet& a) {
  TensorJet out(a.dim(), a.variance(), a.order());
  std::vector<int> idx(a.rank(), 0);
  do {
    out.at(idx) = jet_neg(a.at(idx));
  } while (next_index(idx, a.dim()));
  return out;
}

TensorJet tensor_scale(const TensorJet& a, const Rational& c) {
  TensorJet out(a.dim(), a.variance(), a.order());
  std::vector<int> idx(a.rank(), 0);
  do {
    out.at(idx) = jet_scale(a.at(idx), c);
  } while (next_index(idx, a.dim()));
  return out;
}

TensorJet tensor_scale_jet(const TensorJet& a, const Jet& f) {
  TensorJet out(a.dim(), a.variance(), std::min(a.order(), f.order()));
  std::vector<int> idx(a.rank(), 0);
  do {
    out.at(idx) = jet_mul(a.at(idx), f);
  } while (next_index(idx, a.dim()));
  return out;
}

TensorJet tensor_truncate(const TensorJet& a, int new_order) {
  TensorJet out(a.dim(), a.variance(), new_order);
  std::vector<int> idx(a.rank(), 0);
  do {
    out.at(idx) = jet_truncate(a.at(idx), new_order);
  } while (next_index(idx, a.dim()));
  out.symmetries = a.symmetries;
  return out;
}

bool tensor_is_zero(const TensorJet& a) {
  for (const Jet& j : a.components()) {
    if (!j.is_zero()) return false;
  }
  return true;
}

}  // namespace ambtrac
