#pragma once

#include <cstdint>
#include <vector>

#include "ambtrac/tensor.hpp"

namespace ambtrac {

// cos^2(x_var) expanded to the given window.
Jet cos_sq_jet(int var, int nvars, int order);

TensorJet flat_metric(int n, int order);

// Unit round n-sphere in the iterated polar chart centered on the equator:
// diag(1, cos^2 x_1, cos^2 x_1 cos^2 x_2, ...). Exactly constant curvature 1.
TensorJet sphere_metric(int n, int order);

// S^2 x S^2 with unit factors: diag(1, cos^2 x_1, 1, cos^2 x_3). Einstein
// (Ric = g) but not conformally flat.
TensorJet product_sphere_metric(int order);

// Identity plus a rational perturbation: delta_ij + sum c_{ij,alpha} x^alpha
// over the support variables with 1 <= |alpha| <= pert_degree. Coefficients
// c = p/q with p in {-2..2}, q in {1,2,3} drawn from mt19937_64(seed) in a
// fixed component/monomial order, so a seed fully determines the metric.
TensorJet random_rational_metric(int n, int order, std::uint64_t seed,
                                 const std::vector<int>& support,
                                 int pert_degree = 2);

}  // namespace ambtrac
