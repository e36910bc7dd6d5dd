#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ambtrac/geometry.hpp"

namespace ambtrac {

// Ambient chart layout: jet variable 0 is tau = t - 1, variables 1..n are the
// base coordinates x^i, variable n+1 is r = rho. Coordinate indices coincide
// with jet variable indices; the germ sits at z = (t=1, x=0, rho=0).

enum class Parity { kOdd, kEven };

enum class ChannelStatus {
  kVerifiedZero,        // residual identically zero through the stated window
  kFailed,              // nonzero residual inside the stated window
  kSkippedEmptyWindow,  // x-resolution cap below zero, nothing checkable
  kObstruction,         // even n, order n/2-1: trace-free tangential residual
  kShiftedByAmbiguity,  // informational: moved by a non-divergence-free choice
};

struct ResidualChannel {
  std::string channel;  // tangential | tangential_trace | mixed | rho_rho | t_row
  int rho_order = 0;    // r-power of the classified coefficient; -1 = all
  int x_cap = -1;       // x-degree window the classification covers
  ChannelStatus status = ChannelStatus::kVerifiedZero;
  std::string note;
};

struct AmbientBuildOptions {
  int rho_solve_order = 1;                 // M: highest solved g_m
  std::optional<TensorJet> even_ambiguity; // trace-free symmetric x-jet tensor
};

// Fefferman-Graham ambient metric germ in normal form
//   g~ = 2 rho dt^2 + 2t dt drho + t^2 g_rho,  g_rho = sum_m (rho^m/m!) g_m,
// solved order by order so that Ric(g~) vanishes through r^{M-1} to the
// documented x-resolution. The x-window shrinks by two per rho order
// (g_m is solved through x-degree jet_order - 2m); the residual channels
// record exactly which windows were verified. For even n the solve stops at
// the critical order n/2, where only the trace and divergence of g_{n/2} are
// determined; the leftover trace-free tangential residual is the obstruction
// tensor and the undetermined part is the recorded ambiguity. A final
// pure-trace coefficient at r^{M+1} (completion_phi times g_0) closes the
// (rho,rho) equation at r^{M-1}; it participates in residual verification but
// is no part of the holonomy-phase assembly.
struct AmbientMetricJet {
  int n = 0;
  Parity parity = Parity::kOdd;
  int rho_solve_order = 0;  // M
  int jet_order = 0;        // L: x-window of the input metric
  std::vector<TensorJet> coeffs;  // g_0..g_M on the x-chart
  Jet completion_phi;             // scalar x-jet; closure term is phi * g_0
  bool has_completion = false;
  std::optional<TensorJet> ambiguity;
  bool ambiguity_div_free = true;
  std::vector<int> support;  // x-variables the input (and hence solve) uses
  std::vector<ResidualChannel> residual_report;
  std::optional<TensorJet> obstruction_tf;  // even n: raw residual at n/2-1

  int ambient_dim() const { return n + 2; }
  int solved_x_order(int m) const { return jet_order - 2 * m; }

  // Normal-form metric on the ambient chart, all solved coefficients, total
  // degree window trunc. Stored coefficients ride into the window as-is;
  // callers must keep trunc small enough that unknown x-degrees stay either
  // outside the window or inside slots whose net contribution cancels (see
  // build_ambient internals for the windows used).
  TensorJet assemble(int trunc, bool with_completion) const;
  // Same, with g_rho cut to coefficients g_0..g_{up_to_m}.
  TensorJet assemble_partial(int up_to_m, int trunc) const;
};

// Solves the normal-form Ricci equations order by order via exact linear
// probes of the linearized Ricci operator; no closed-form recursion is
// hardcoded. Throws SingularMatrixError when a regular-order system is
// singular and std::invalid_argument on malformed input (even n requires
// rho_solve_order == n/2 exactly; jet_order must be >= 2*rho_solve_order).
AmbientMetricJet build_ambient(const TensorJet& g, const AmbientBuildOptions& opts);

// nabla_A T^B - delta_A^B for T = t dt on an assembled normal-form metric.
TensorJet straightness_residual(const TensorJet& ga);
bool check_straightness(const TensorJet& ga);

// L_T g~ - 2 g~ componentwise.
TensorJet homogeneity_residual(const TensorJet& ga);
bool check_homogeneity(const TensorJet& ga);

// Tangential block of g~ at t=1, rho=0 equals the input metric exactly.
bool check_initial(const AmbientMetricJet& amb, const TensorJet& g);

// Stored classification filtered to rho orders <= up_to_order; throws
// std::invalid_argument beyond the solve depth.
std::vector<ResidualChannel> ricci_residual(const AmbientMetricJet& amb,
                                            int up_to_order);

// Even n only (throws std::domain_error otherwise): the trace-free tangential
// Ricci coefficient at r^{n/2-1}, raw normalization, on the x-chart.
const TensorJet& obstruction(const AmbientMetricJet& amb);

// Recomputes every residual channel from the stored coefficients in one pass
// at the tightest truncation (windows capped accordingly). Negative controls
// corrupt a stored coefficient and watch a channel flip to kFailed.
std::vector<ResidualChannel> verify_ambient(const AmbientMetricJet& amb);

}  // namespace ambtrac
