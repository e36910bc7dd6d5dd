#pragma once

#include "ambtrac/tensor.hpp"

namespace ambtrac {

// Pseudo-Riemannian tensor calculus on a coordinate chart. Conventions,
// fixed once for the whole repository (see docs/conventions.md):
//   Gamma^k_ij = (1/2) g^kl (d_i g_jl + d_j g_il - d_l g_ij)
//   R^l_kij    = d_i Gamma^l_jk - d_j Gamma^l_ik
//                + Gamma^m_jk Gamma^l_im - Gamma^m_ik Gamma^l_jm,
//   i.e. R(d_i, d_j) d_k = nabla_i nabla_j d_k - nabla_j nabla_i d_k;
//   Ric_kj = R^i_kij (unit round n-sphere: Ric = (n-1) g);
//   covariant_derivative prepends the derivative slot:
//   (nabla T)_{a I} = nabla_a T_I;
//   Rm_abcd = g_ae R^e_bcd;  P = (Ric - J g)/(n-2),  J = Scal/(2(n-1)).

struct SchoutenData {
  TensorJet P;   // (0,2) symmetric
  Jet J;         // scalar
  TensorJet ric;
  Jet scal;
};

// Inverse metric; requires det g invertible at the base point.
TensorJet metric_inverse(const TensorJet& g);

TensorJet christoffel(const TensorJet& g, const TensorJet& ginv);
TensorJet riemann(const TensorJet& gamma);
TensorJet ricci(const TensorJet& riem);
Jet scalar_curvature(const TensorJet& ric, const TensorJet& ginv);

// One extra lower slot, prepended. Throws when the jet order is exhausted.
TensorJet covariant_derivative(const TensorJet& t, const TensorJet& gamma);

SchoutenData schouten(const TensorJet& g, const TensorJet& ginv);

TensorJet riemann_lowered(const TensorJet& g, const TensorJet& riem);
TensorJet kulkarni_nomizu(const TensorJet& a, const TensorJet& b);
TensorJet weyl(const TensorJet& g, const TensorJet& riem_lowered,
               const SchoutenData& sch);

// Conformal test oracles.
TensorJet cotton(const SchoutenData& sch, const TensorJet& gamma);
TensorJet bach(const TensorJet& g, const TensorJet& ginv,
               const TensorJet& gamma, const TensorJet& riem,
               const SchoutenData& sch);

// Exact first variation of Ricci at g in the direction of the symmetric
// (0,2) perturbation h:
//   deltaGamma^l_jk = (1/2) g^lm (nabla_j h_km + nabla_k h_jm - nabla_m h_jk)
//   deltaRic_kj     = nabla_i deltaGamma^i_jk - nabla_j deltaGamma^i_ik.
TensorJet ricci_linearized(const TensorJet& h, const TensorJet& ginv,
                           const TensorJet& gamma);

// Raises the chosen slot with ginv (slot variance must be kDown).
TensorJet raise_slot(const TensorJet& t, const TensorJet& ginv, int slot);

// Trace over two slots of opposite variance.
TensorJet trace_slots(const TensorJet& t, int slot_a, int slot_b);

// Full contraction helpers used by checks.
Jet metric_trace(const TensorJet& s, const TensorJet& ginv);  // g^ij s_ij

}  // namespace ambtrac
