#include "ambtrac/geometry.hpp"

#include <stdexcept>

namespace ambtrac {

namespace {

void require_metric_shape(const TensorJet& g) {
  if (g.rank() != 2 || g.variance()[0] != Variance::kDown ||
      g.variance()[1] != Variance::kDown) {
    throw std::invalid_argument("expected a (0,2) tensor");
  }
}

}  // namespace

TensorJet metric_inverse(const TensorJet& g) {
  require_metric_shape(g);
  const int dim = g.dim();
  const int order = g.order();
  // Gauss-Jordan over the local jet ring; a pivot is usable iff its constant
  // term is nonzero. Augment with the identity and sweep.
  std::vector<std::vector<Jet>> a(dim), b(dim);
  for (int r = 0; r < dim; ++r) {
    a[r].resize(dim);
    b[r].resize(dim);
    for (int c = 0; c < dim; ++c) {
      a[r][c] = g.at({r, c});
      b[r][c] = jet_const(c == r ? 1 : 0, dim, order);
    }
  }
  for (int col = 0; col < dim; ++col) {
    int pivot = -1;
    for (int r = col; r < dim; ++r) {
      if (jet_eval0(a[r][col]) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) {
      throw std::domain_error("metric_inverse: degenerate at base point");
    }
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    const Jet inv = jet_invert(a[col][col]);
    for (int c = 0; c < dim; ++c) {
      a[col][c] = jet_mul(a[col][c], inv);
      b[col][c] = jet_mul(b[col][c], inv);
    }
    for (int r = 0; r < dim; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const Jet f = a[r][col];
      for (int c = 0; c < dim; ++c) {
        a[r][c] = jet_sub(a[r][c], jet_mul(f, a[col][c]));
        b[r][c] = jet_sub(b[r][c], jet_mul(f, b[col][c]));
      }
    }
  }
  TensorJet out(dim, {Variance::kUp, Variance::kUp}, order);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) out.set({r, c}, b[r][c]);
  }
  out.symmetries = {{0, 1, false}};
  return out;
}

TensorJet christoffel(const TensorJet& g, const TensorJet& ginv) {
  require_metric_shape(g);
  const int dim = g.dim();
  const int order = std::max(g.order() - 1, 0);
  // dg[l][i][j] = d_l g_ij, precomputed once.
  std::vector<std::vector<std::vector<Jet>>> dg(
      dim, std::vector<std::vector<Jet>>(dim, std::vector<Jet>(dim)));
  for (int l = 0; l < dim; ++l) {
    for (int i = 0; i < dim; ++i) {
      for (int j = i; j < dim; ++j) {
        dg[l][i][j] = jet_partial(g.at({i, j}), l);
        if (j != i) dg[l][j][i] = dg[l][i][j];
      }
    }
  }
  TensorJet out(dim, {Variance::kUp, Variance::kDown, Variance::kDown}, order);
  const Rational half(1, 2);
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) {
      // lower[l] = (1/2)(d_i g_jl + d_j g_il - d_l g_ij)
      std::vector<Jet> lower(dim);
      for (int l = 0; l < dim; ++l) {
        lower[l] = jet_scale(
            jet_sub(jet_add(dg[i][j][l], dg[j][i][l]), dg[l][i][j]), half);
      }
      for (int k = 0; k < dim; ++k) {
        Jet acc = jet_const(0, dim, order);
        for (int l = 0; l < dim; ++l) {
          if (lower[l].is_zero() || ginv.at({k, l}).is_zero()) continue;
          acc = jet_add(acc, jet_mul(ginv.at({k, l}), lower[l]));
        }
        out.set({k, i, j}, acc);
        if (j != i) out.set({k, j, i}, out.at({k, i, j}));
      }
    }
  }
  out.symmetries = {{1, 2, false}};
  return out;
}

TensorJet riemann(const TensorJet& gamma) {
  const int dim = gamma.dim();
  const int order = std::max(gamma.order() - 1, 0);
  TensorJet out(dim,
                {Variance::kUp, Variance::kDown, Variance::kDown,
                 Variance::kDown},
                order);
  for (int l = 0; l < dim; ++l) {
    for (int k = 0; k < dim; ++k) {
      for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
          Jet acc = jet_sub(jet_partial(gamma.at({l, j, k}), i),
                            jet_partial(gamma.at({l, i, k}), j));
          for (int m = 0; m < dim; ++m) {
            const Jet& gjk = gamma.at({m, j, k});
            const Jet& gik = gamma.at({m, i, k});
            if (!gjk.is_zero() && !gamma.at({l, i, m}).is_zero()) {
              acc = jet_add(acc, jet_mul(gjk, gamma.at({l, i, m})));
            }
            if (!gik.is_zero() && !gamma.at({l, j, m}).is_zero()) {
              acc = jet_sub(acc, jet_mul(gik, gamma.at({l, j, m})));
            }
          }
          acc = jet_truncate(acc, order);
          out.set({l, k, i, j}, acc);
          out.set({l, k, j, i}, jet_neg(acc));
        }
      }
    }
  }
  out.symmetries = {{2, 3, true}};
  return out;
}

TensorJet ricci(const TensorJet& riem) {
  const int dim = riem.dim();
  TensorJet out(dim, {Variance::kDown, Variance::kDown}, riem.order());
  for (int k = 0; k < dim; ++k) {
    for (int j = 0; j < dim; ++j) {
      Jet acc = jet_const(0, dim, riem.order());
      for (int i = 0; i < dim; ++i) {
        acc = jet_add(acc, riem.at({i, k, i, j}));
      }
      out.set({k, j}, acc);
    }
  }
  out.symmetries = {{0, 1, false}};
  return out;
}

Jet scalar_curvature(const TensorJet& ric, const TensorJet& ginv) {
  return metric_trace(ric, ginv);
}

TensorJet covariant_derivative(const TensorJet& t, const TensorJet& gamma) {
  const int dim = t.dim();
  if (t.order() == 0) {
    throw std::domain_error("covariant_derivative: jet order exhausted");
  }
  std::vector<Variance> var;
  var.reserve(t.rank() + 1);
  var.push_back(Variance::kDown);
  for (Variance v : t.variance()) var.push_back(v);
  const int order =
      std::min(std::max(t.order() - 1, 0), gamma.order());
  TensorJet out(dim, var, order);
  std::vector<int> idx(t.rank(), 0);
  do {
    const Jet& base = t.at(idx);
    for (int a = 0; a < dim; ++a) {
      Jet acc = jet_partial(base, a);
      std::vector<int> probe = idx;
      for (int slot = 0; slot < t.rank(); ++slot) {
        const int orig = idx[slot];
        for (int m = 0; m < dim; ++m) {
          if (m == orig) continue;  // handled below to skip zero lookups fast
          probe[slot] = m;
          const Jet& tm = t.at(probe);
          if (tm.is_zero()) continue;
          if (t.variance()[slot] == Variance::kUp) {
            const Jet& gs = gamma.at({idx[slot], a, m});
            if (!gs.is_zero()) acc = jet_add(acc, jet_mul(gs, tm));
          } else {
            const Jet& gs = gamma.at({m, a, idx[slot]});
            if (!gs.is_zero()) acc = jet_sub(acc, jet_mul(gs, tm));
          }
        }
        probe[slot] = orig;
        // m == orig term
        if (!base.is_zero()) {
          if (t.variance()[slot] == Variance::kUp) {
            const Jet& gs = gamma.at({orig, a, orig});
            if (!gs.is_zero()) acc = jet_add(acc, jet_mul(gs, base));
          } else {
            const Jet& gs = gamma.at({orig, a, orig});
            if (!gs.is_zero()) acc = jet_sub(acc, jet_mul(gs, base));
          }
        }
      }
      acc = jet_truncate(acc, order);
      std::vector<int> oidx;
      oidx.reserve(idx.size() + 1);
      oidx.push_back(a);
      for (int v : idx) oidx.push_back(v);
      out.set(oidx, std::move(acc));
    }
  } while (next_index(idx, dim));
  return out;
}

SchoutenData schouten(const TensorJet& g, const TensorJet& ginv) {
  const int n = g.dim();
  if (n < 3) throw std::domain_error("schouten: requires dimension >= 3");
  const TensorJet gamma = christoffel(g, ginv);
  const TensorJet riem = riemann(gamma);
  SchoutenData out;
  out.ric = ricci(riem);
  out.scal = scalar_curvature(out.ric, ginv);
  out.J = jet_scale(out.scal, rat_frac(1, 2 * (n - 1)));
  const TensorJet jg = tensor_scale_jet(g, out.J);
  out.P = tensor_scale(tensor_sub(out.ric, jg), rat_frac(1, n - 2));
  out.P.symmetries = {{0, 1, false}};
  return out;
}

TensorJet riemann_lowered(const TensorJet& g, const TensorJet& riem) {
  const int dim = g.dim();
  const int order = std::min(g.order(), riem.order());
  TensorJet out(dim,
                {Variance::kDown, Variance::kDown, Variance::kDown,
                 Variance::kDown},
                order);
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      for (int c = 0; c < dim; ++c) {
        for (int d = c + 1; d < dim; ++d) {
          Jet acc = jet_const(0, dim, order);
          for (int e = 0; e < dim; ++e) {
            if (g.at({a, e}).is_zero() || riem.at({e, b, c, d}).is_zero()) {
              continue;
            }
            acc = jet_add(acc, jet_mul(g.at({a, e}), riem.at({e, b, c, d})));
          }
          out.set({a, b, c, d}, acc);
          out.set({a, b, d, c}, jet_neg(acc));
        }
      }
    }
  }
  out.symmetries = {{2, 3, true}};
  return out;
}

TensorJet kulkarni_nomizu(const TensorJet& a, const TensorJet& b) {
  require_metric_shape(a);
  require_metric_shape(b);
  const int dim = a.dim();
  const int order = std::min(a.order(), b.order());
  TensorJet out(dim,
                {Variance::kDown, Variance::kDown, Variance::kDown,
                 Variance::kDown},
                order);
  for (int p = 0; p < dim; ++p) {
    for (int q = 0; q < dim; ++q) {
      for (int c = 0; c < dim; ++c) {
        for (int d = 0; d < dim; ++d) {
          // (a ^ b)_pqcd = a_pc b_qd + a_qd b_pc - a_pd b_qc - a_qc b_pd
          Jet acc = jet_add(jet_mul(a.at({p, c}), b.at({q, d})),
                            jet_mul(a.at({q, d}), b.at({p, c})));
          acc = jet_sub(acc, jet_mul(a.at({p, d}), b.at({q, c})));
          acc = jet_sub(acc, jet_mul(a.at({q, c}), b.at({p, d})));
          out.set({p, q, c, d}, acc);
        }
      }
    }
  }
  return out;
}

TensorJet weyl(const TensorJet& g, const TensorJet& riem_lowered,
               const SchoutenData& sch) {
  return tensor_sub(riem_lowered, kulkarni_nomizu(g, sch.P));
}

TensorJet cotton(const SchoutenData& sch, const TensorJet& gamma) {
  const TensorJet dp = covariant_derivative(sch.P, gamma);
  const int dim = dp.dim();
  TensorJet out(dim, {Variance::kDown, Variance::kDown, Variance::kDown},
                dp.order());
  for (int k = 0; k < dim; ++k) {
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        out.set({k, i, j}, jet_sub(dp.at({k, i, j}), dp.at({i, k, j})));
      }
    }
  }
  return out;
}

TensorJet bach(const TensorJet& g, const TensorJet& ginv,
               const TensorJet& gamma, const TensorJet& riem,
               const SchoutenData& sch) {
  const int dim = g.dim();
  const TensorJet c = cotton(sch, gamma);
  const TensorJet dc = covariant_derivative(c, gamma);
  const TensorJet rm = riemann_lowered(g, riem);
  const TensorJet w = weyl(g, rm, sch);
  const int order = dc.order();
  TensorJet out(dim, {Variance::kDown, Variance::kDown}, order);
  // B_ij = nabla^k C_kij + P^kl W_kilj
  TensorJet pup = raise_slot(raise_slot(sch.P, ginv, 0), ginv, 1);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      Jet acc = jet_const(0, dim, order);
      for (int k = 0; k < dim; ++k) {
        for (int a = 0; a < dim; ++a) {
          if (ginv.at({k, a}).is_zero() || dc.at({a, k, i, j}).is_zero()) {
            continue;
          }
          acc = jet_add(acc, jet_mul(ginv.at({k, a}), dc.at({a, k, i, j})));
        }
        for (int l = 0; l < dim; ++l) {
          if (pup.at({k, l}).is_zero() || w.at({k, i, l, j}).is_zero()) {
            continue;
          }
          acc = jet_add(acc, jet_mul(pup.at({k, l}), w.at({k, i, l, j})));
        }
      }
      out.set({i, j}, jet_truncate(acc, order));
    }
  }
  out.symmetries = {{0, 1, false}};
  return out;
}

TensorJet ricci_linearized(const TensorJet& h, const TensorJet& ginv,
                           const TensorJet& gamma) {
  const int dim = h.dim();
  const TensorJet dh = covariant_derivative(h, gamma);  // (a, j, k)
  const int order = std::max(dh.order() - 1, 0);
  // deltaGamma^l_jk = (1/2) g^lm (dh_jkm + dh_kjm - dh_mjk)
  TensorJet dgam(dim, {Variance::kUp, Variance::kDown, Variance::kDown},
                 dh.order());
  const Rational half(1, 2);
  for (int j = 0; j < dim; ++j) {
    for (int k = j; k < dim; ++k) {
      std::vector<Jet> lower(dim);
      for (int m = 0; m < dim; ++m) {
        lower[m] = jet_scale(
            jet_sub(jet_add(dh.at({j, k, m}), dh.at({k, j, m})),
                    dh.at({m, j, k})),
            half);
      }
      for (int l = 0; l < dim; ++l) {
        Jet acc = jet_const(0, dim, dh.order());
        for (int m = 0; m < dim; ++m) {
          if (lower[m].is_zero() || ginv.at({l, m}).is_zero()) continue;
          acc = jet_add(acc, jet_mul(ginv.at({l, m}), lower[m]));
        }
        dgam.set({l, j, k}, acc);
        if (k != j) dgam.set({l, k, j}, dgam.at({l, j, k}));
      }
    }
  }
  // Divergence term: D_jk = nabla_i deltaGamma^i_jk (trace of the coupled
  // derivative, computed directly to avoid the full (1,3) tensor).
  TensorJet div(dim, {Variance::kDown, Variance::kDown}, order);
  for (int j = 0; j < dim; ++j) {
    for (int k = j; k < dim; ++k) {
      Jet acc = jet_const(0, dim, order);
      for (int i = 0; i < dim; ++i) {
        acc = jet_add(acc, jet_partial(dgam.at({i, j, k}), i));
        for (int m = 0; m < dim; ++m) {
          const Jet& dg_mjk = dgam.at({m, j, k});
          if (!dg_mjk.is_zero() && !gamma.at({i, i, m}).is_zero()) {
            acc = jet_add(acc, jet_mul(gamma.at({i, i, m}), dg_mjk));
          }
          const Jet& dg_imk = dgam.at({i, m, k});
          if (!dg_imk.is_zero() && !gamma.at({m, i, j}).is_zero()) {
            acc = jet_sub(acc, jet_mul(gamma.at({m, i, j}), dg_imk));
          }
          const Jet& dg_ijm = dgam.at({i, j, m});
          if (!dg_ijm.is_zero() && !gamma.at({m, i, k}).is_zero()) {
            acc = jet_sub(acc, jet_mul(gamma.at({m, i, k}), dg_ijm));
          }
        }
      }
      acc = jet_truncate(acc, order);
      div.set({j, k}, acc);
      if (k != j) div.set({k, j}, div.at({j, k}));
    }
  }
  // Trace-vector term: v_k = deltaGamma^i_ik, then nabla_j v_k.
  TensorJet v(dim, {Variance::kDown}, dgam.order());
  for (int k = 0; k < dim; ++k) {
    Jet acc = jet_const(0, dim, dgam.order());
    for (int i = 0; i < dim; ++i) acc = jet_add(acc, dgam.at({i, i, k}));
    v.set({k}, acc);
  }
  const TensorJet dv = covariant_derivative(v, gamma);  // (j, k)
  TensorJet out(dim, {Variance::kDown, Variance::kDown}, order);
  for (int k = 0; k < dim; ++k) {
    for (int j = 0; j < dim; ++j) {
      out.set({k, j},
              jet_truncate(jet_sub(div.at({j, k}), dv.at({j, k})), order));
    }
  }
  out.symmetries = {{0, 1, false}};
  return out;
}

TensorJet raise_slot(const TensorJet& t, const TensorJet& ginv, int slot) {
  const int dim = t.dim();
  if (slot < 0 || slot >= t.rank() ||
      t.variance()[slot] != Variance::kDown) {
    throw std::invalid_argument("raise_slot: bad slot");
  }
  std::vector<Variance> var = t.variance();
  var[slot] = Variance::kUp;
  TensorJet out(dim, var, std::min(t.order(), ginv.order()));
  std::vector<int> idx(t.rank(), 0);
  do {
    Jet acc = jet_const(0, dim, out.order());
    std::vector<int> src = idx;
    for (int m = 0; m < dim; ++m) {
      src[slot] = m;
      if (t.at(src).is_zero() || ginv.at({idx[slot], m}).is_zero()) continue;
      acc = jet_add(acc, jet_mul(ginv.at({idx[slot], m}), t.at(src)));
    }
    out.at(idx) = acc;
  } while (next_index(idx, dim));
  return out;
}

TensorJet trace_slots(const TensorJet& t, int slot_a, int slot_b) {
  const int dim = t.dim();
  if (slot_a == slot_b || slot_a < 0 || slot_b < 0 || slot_a >= t.rank() ||
      slot_b >= t.rank() ||
      t.variance()[slot_a] == t.variance()[slot_b]) {
    throw std::invalid_argument("trace_slots: need opposite variances");
  }
  std::vector<Variance> var;
  for (int s = 0; s < t.rank(); ++s) {
    if (s != slot_a && s != slot_b) var.push_back(t.variance()[s]);
  }
  TensorJet out(dim, var, t.order());
  std::vector<int> idx(out.rank(), 0);
  do {
    Jet acc = jet_const(0, dim, t.order());
    std::vector<int> src(t.rank(), 0);
    for (int m = 0; m < dim; ++m) {
      int pos = 0;
      for (int s = 0; s < t.rank(); ++s) {
        if (s == slot_a || s == slot_b) {
          src[s] = m;
        } else {
          src[s] = idx[pos++];
        }
      }
      acc = jet_add(acc, t.at(src));
    }
    out.at(idx) = acc;
  } while (next_index(idx, dim));
  return out;
}

Jet metric_trace(const TensorJet& s, const TensorJet& ginv) {
  const int dim = s.dim();
  Jet acc = jet_const(0, dim, std::min(s.order(), ginv.order()));
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      if (s.at({i, j}).is_zero() || ginv.at({i, j}).is_zero()) continue;
      acc = jet_add(acc, jet_mul(ginv.at({i, j}), s.at({i, j})));
    }
  }
  return acc;
}

}  // namespace ambtrac
