#pragma once

#include <string>
#include <vector>

#include "ambtrac/jet.hpp"

namespace ambtrac {

struct Chart {
  std::vector<std::string> names;  // coordinate labels, one per dimension
  int dim() const { return static_cast<int>(names.size()); }
};

enum class Variance : std::uint8_t { kUp, kDown };

// Declared index-pair symmetry, canonical on stored components (verified by
// tensor_check_symmetries, not enforced on write).
struct PairSymmetry {
  int slot_a = 0;
  int slot_b = 0;
  bool antisymmetric = false;
};

// Dense runtime-rank tensor of Jets on a chart of the given dimension; jets
// use one variable per coordinate. Storage is row-major (first index
// slowest). Treated as immutable outside construction code.
class TensorJet {
 public:
  TensorJet() = default;
  // Zero tensor with all components at the given jet order.
  TensorJet(int dim, std::vector<Variance> variance, int order);

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(variance_.size()); }
  int order() const { return order_; }
  const std::vector<Variance>& variance() const { return variance_; }
  const std::vector<Jet>& components() const { return comp_; }

  const Jet& at(const std::vector<int>& idx) const { return comp_[offset(idx)]; }
  Jet& at(const std::vector<int>& idx) { return comp_[offset(idx)]; }
  void set(const std::vector<int>& idx, Jet value);

  // Recomputes the order field as the minimum component order; used by
  // construction helpers that fill components with mixed-order results.
  void settle_order();

  std::vector<PairSymmetry> symmetries;  // declared, optional

  bool operator==(const TensorJet&) const;

 private:
  std::size_t offset(const std::vector<int>& idx) const;

  int dim_ = 0;
  int order_ = 0;
  std::vector<Variance> variance_;
  std::vector<Jet> comp_;
};

// Odometer over index tuples; returns false after the last tuple.
bool next_index(std::vector<int>& idx, int dim);

bool tensor_check_symmetries(const TensorJet& t);

TensorJet tensor_add(const TensorJet& a, const TensorJet& b);
TensorJet tensor_sub(const TensorJet& a, const TensorJet& b);
TensorJet tensor_neg(const TensorJet& a);
TensorJet tensor_scale(const TensorJet& a, const Rational& c);
TensorJet tensor_scale_jet(const TensorJet& a, const Jet& f);
TensorJet tensor_truncate(const TensorJet& a, int new_order);
bool tensor_is_zero(const TensorJet& a);

}  // namespace ambtrac
