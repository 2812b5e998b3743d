#pragma once

#include <string>
#include <vector>

#include "ncg/linalg.hpp"
#include "ncg/qalgebra.hpp"

namespace ncg {

// Finite-dimensional real Lie algebra of hermitian derivations, given by a
// basis and exact rational structure constants f[c][a][b] with
// [d_a, d_b] = sum_c f[c][a][b] d_c.
struct LieAlgebraSpec {
  AlgebraSpec alg;
  std::vector<Derivation> basis;
  std::vector<RatMat> f;

  static LieAlgebraSpec abelian(AlgebraSpec a, std::vector<Derivation> basis) {
    LieAlgebraSpec g;
    g.alg = a;
    const size_t n = basis.size();
    g.basis = std::move(basis);
    g.f.assign(n, RatMat(n, std::vector<Rational>(n, Rational(0))));
    return g;
  }

  // The standard basis: the two torus rotations, or the three sphere
  // derivations; all pairwise commuting.
  static LieAlgebraSpec standard(AlgebraSpec a) {
    std::vector<Derivation> basis;
    for (int k = 1; k <= a.derivation_count(); ++k)
      basis.push_back(Derivation::basis(a, k));
    return abelian(a, std::move(basis));
  }

  size_t dim() const { return basis.size(); }

  Report validate() const {
    Report rep;
    const size_t n = dim();
    bool shape = f.size() == n;
    for (const auto& m : f) {
      if (m.size() != n) shape = false;
      for (const auto& row : m)
        if (row.size() != n) shape = false;
    }
    rep.add("structure constants have shape n^3", shape);
    if (!shape) return rep;
    bool antisym = true;
    for (size_t c = 0; c < n; ++c)
      for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
          if (f[c][a][b] != -f[c][b][a]) antisym = false;
    rep.add("structure constants are antisymmetric", antisym);
    bool jacobi = true;
    for (size_t a = 0; a < n && jacobi; ++a)
      for (size_t b = 0; b < n && jacobi; ++b)
        for (size_t c = 0; c < n && jacobi; ++c)
          for (size_t s = 0; s < n; ++s) {
            Rational sum(0);
            for (size_t r = 0; r < n; ++r)
              sum += f[r][a][b] * f[s][r][c] + f[r][b][c] * f[s][r][a] +
                     f[r][c][a] * f[s][r][b];
            if (sum != 0) {
              jacobi = false;
              break;
            }
          }
    rep.add("structure constants satisfy the Jacobi identity", jacobi);
    for (size_t k = 0; k < n; ++k) {
      Report dr = check_derivation(basis[k]);
      rep.add("basis derivation " + std::to_string(k + 1) + " is well defined",
              dr.pass());
    }
    // bracket realization on the generators (and on the formal factor symbol)
    bool realized = true;
    std::vector<AlgElement> probes;
    probes.push_back(gen_atom_elem(alg, GenAtom::A));
    probes.push_back(gen_atom_elem(alg, GenAtom::B));
    if (alg.is_sphere()) {
      probes.push_back(gen_atom_elem(alg, GenAtom::As));
      probes.push_back(gen_atom_elem(alg, GenAtom::Bs));
    }
    if (alg.formal_factor) probes.push_back(AlgElement::word_elem(alg, {KSym::K}));
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b)
        for (const auto& x : probes) {
          AlgElement lhs = basis[a].apply(basis[b].apply(x)) -
                           basis[b].apply(basis[a].apply(x));
          AlgElement rhs = AlgElement::zero(alg);
          for (size_t c = 0; c < n; ++c)
            if (f[c][a][b] != 0)
              rhs = rhs + basis[c].apply(x) * Scalar::from_rational(f[c][a][b]);
          if (!(lhs == rhs)) realized = false;
        }
    rep.add("brackets are realized on the generators", realized);
    return rep;
  }
};

// A free module basis E_1..E_n over the algebra together with the anchor
// matrix expressing the images of the basis derivations in that basis. For
// the standard calculi the anchor is the identity.
struct RealCalculus {
  AlgebraSpec alg;
  LieAlgebraSpec lie;
  RatMat anchor;
  std::string basis_symbol = "E";

  static RealCalculus free_calculus(AlgebraSpec a, LieAlgebraSpec g,
                                    std::string symbol = "E") {
    RealCalculus c;
    c.alg = a;
    c.lie = std::move(g);
    c.anchor = rat_identity(c.lie.dim());
    c.basis_symbol = std::move(symbol);
    return c;
  }
  static RealCalculus anchored(AlgebraSpec a, LieAlgebraSpec g, RatMat anchor,
                               std::string symbol) {
    RealCalculus c;
    c.alg = a;
    c.lie = std::move(g);
    require(anchor.size() == c.lie.dim(), Err::RankMismatch, "anchor must be n x n");
    rat_inverse(anchor);  // NotFree if singular
    c.anchor = std::move(anchor);
    c.basis_symbol = std::move(symbol);
    return c;
  }

  size_t dim() const { return lie.dim(); }
  bool identity_anchor() const { return rat_is_identity(anchor); }
};

// Module elements are coordinate vectors over the basis E_a; the module is a
// right module, so m = sum_a E_a m^a and scaling acts on the right.
using ModuleVec = std::vector<AlgElement>;

inline ModuleVec mv_zero(const AlgebraSpec& s, size_t n) {
  return ModuleVec(n, AlgElement::zero(s));
}
inline ModuleVec mv_add(const ModuleVec& a, const ModuleVec& b) {
  ModuleVec r(a);
  for (size_t k = 0; k < r.size(); ++k) r[k] = r[k] + b[k];
  return r;
}
inline ModuleVec mv_sub(const ModuleVec& a, const ModuleVec& b) {
  ModuleVec r(a);
  for (size_t k = 0; k < r.size(); ++k) r[k] = r[k] - b[k];
  return r;
}
inline ModuleVec mv_neg(const ModuleVec& a) {
  ModuleVec r(a);
  for (auto& x : r) x = -x;
  return r;
}
inline ModuleVec mv_scale(const ModuleVec& a, const AlgElement& x) {
  ModuleVec r(a);
  for (auto& c : r) c = c * x;
  return r;
}
inline ModuleVec mv_scale_rat(const ModuleVec& a, const Rational& x) {
  ModuleVec r(a);
  for (auto& c : r) c = c * Scalar::from_rational(x);
  return r;
}
inline bool mv_is_zero(const ModuleVec& a) {
  for (const auto& x : a)
    if (!x.is_zero()) return false;
  return true;
}
inline bool mv_eq(const ModuleVec& a, const ModuleVec& b) {
  if (a.size() != b.size()) return false;
  for (size_t k = 0; k < a.size(); ++k)
    if (!(a[k] == b[k])) return false;
  return true;
}

// E-coordinates of the anchored image of basis derivation a.
inline ModuleVec anchored_basis(const RealCalculus& c, size_t a) {
  ModuleVec v = mv_zero(c.alg, c.dim());
  for (size_t p = 0; p < c.dim(); ++p)
    v[p] = AlgElement::scalar(c.alg, Scalar::from_rational(c.anchor[p][a]));
  return v;
}

inline ModuleVec mv_apply(const Derivation& d, const ModuleVec& m) {
  ModuleVec r(m);
  for (auto& x : r) x = d.apply(x);
  return r;
}

inline ModuleVec mv_specialize_one(const ModuleVec& m) {
  ModuleVec r(m);
  for (auto& x : r) x = x.specialize_one();
  return r;
}

using ElemMat = std::vector<std::vector<AlgElement>>;

inline ElemMat elem_mat_from_rat(const AlgebraSpec& s, const RatMat& m) {
  ElemMat r(m.size());
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j)
      r[i].push_back(AlgElement::scalar(s, Scalar::from_rational(m[i][j])));
  return r;
}

inline ElemMat elem_mat_mul(const ElemMat& a, const ElemMat& b) {
  require(!a.empty() && !b.empty() && a[0].size() == b.size(), Err::RankMismatch,
          "matrix dimensions do not match");
  const AlgebraSpec s = a[0][0].spec;
  ElemMat r(a.size(), std::vector<AlgElement>(b[0].size(), AlgElement::zero(s)));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < b.size(); ++k)
      for (size_t j = 0; j < b[0].size(); ++j) r[i][j] = r[i][j] + a[i][k] * b[k][j];
  return r;
}

// Hermitian metric with its exact inverse. The inverse is either registered
// (and verified) or computed entrywise for diagonal metrics.
struct HermitianMetric {
  ElemMat h;
  ElemMat hinv;

  static HermitianMetric with_registered_inverse(ElemMat h, ElemMat hinv) {
    HermitianMetric m;
    m.h = std::move(h);
    m.hinv = std::move(hinv);
    m.check_inverse();
    return m;
  }

  static HermitianMetric diagonal(const std::vector<AlgElement>& entries) {
    require(!entries.empty(), Err::RankMismatch, "empty metric");
    const AlgebraSpec s = entries[0].spec;
    const size_t n = entries.size();
    HermitianMetric m;
    m.h.assign(n, std::vector<AlgElement>(n, AlgElement::zero(s)));
    m.hinv = m.h;
    for (size_t k = 0; k < n; ++k) {
      m.h[k][k] = entries[k];
      m.hinv[k][k] = entries[k].invert();
    }
    m.check_inverse();
    return m;
  }

  size_t dim() const { return h.size(); }

  void check_inverse() const {
    const size_t n = h.size();
    require(hinv.size() == n, Err::RankMismatch, "inverse has wrong shape");
    const AlgebraSpec s = h[0][0].spec;
    for (size_t a = 0; a < n; ++a)
      for (size_t c = 0; c < n; ++c) {
        AlgElement up_down = AlgElement::zero(s);
        AlgElement down_up = AlgElement::zero(s);
        for (size_t b = 0; b < n; ++b) {
          up_down = up_down + hinv[a][b] * h[b][c];
          down_up = down_up + h[a][b] * hinv[b][c];
        }
        const AlgElement want =
            a == c ? AlgElement::unit(s) : AlgElement::zero(s);
        require(up_down == want && down_up == want, Err::NotInvertible,
                "registered inverse fails the two-sided identity");
      }
  }
};

// h(m, n) = sum (m^a)* h_ab n^b; conjugate-linear in the first slot.
inline AlgElement metric_eval(const HermitianMetric& h, const ModuleVec& m,
                              const ModuleVec& n) {
  require(m.size() == h.dim() && n.size() == h.dim(), Err::RankMismatch,
          "vector length does not match the metric");
  const AlgebraSpec s = h.h[0][0].spec;
  AlgElement out = AlgElement::zero(s);
  for (size_t a = 0; a < h.dim(); ++a)
    for (size_t b = 0; b < h.dim(); ++b)
      out = out + m[a].star() * h.h[a][b] * n[b];
  return out;
}

// Metric and inverse evaluated on the anchored basis; for the identity
// anchor these are the registered matrices themselves.
inline ElemMat anchored_metric(const RealCalculus& c, const HermitianMetric& h) {
  if (c.identity_anchor()) return h.h;
  const RatMat at = rat_transpose(c.anchor);
  return elem_mat_mul(elem_mat_from_rat(c.alg, at),
                      elem_mat_mul(h.h, elem_mat_from_rat(c.alg, c.anchor)));
}
inline ElemMat anchored_metric_inverse(const RealCalculus& c, const HermitianMetric& h) {
  if (c.identity_anchor()) return h.hinv;
  const RatMat ainv = rat_inverse(c.anchor);
  return elem_mat_mul(elem_mat_from_rat(c.alg, ainv),
                      elem_mat_mul(h.hinv, elem_mat_from_rat(c.alg, rat_transpose(ainv))));
}

// Full validation of the metric calculus: Lie algebra axioms, derivation
// well-definedness, anchor invertibility, hermitian symmetry of the metric,
// and the two-sided inverse identity.
inline Report validate_real_metric_calculus(const RealCalculus& c, const HermitianMetric& h) {
  Report rep = c.lie.validate();
  bool anchor_ok = true;
  try {
    rat_inverse(c.anchor);
  } catch (const EngineError&) {
    anchor_ok = false;
  }
  rep.add("anchor matrix is invertible", anchor_ok);
  rep.add("metric has shape n x n", h.dim() == c.dim());
  if (h.dim() != c.dim()) return rep;
  bool herm = true;
  for (size_t a = 0; a < h.dim(); ++a)
    for (size_t b = 0; b < h.dim(); ++b)
      if (!(h.h[a][b].star() == h.h[b][a])) herm = false;
  rep.add("metric is hermitian: h(m,n)* = h(n,m)", herm);
  bool inv_ok = true;
  try {
    h.check_inverse();
  } catch (const EngineError&) {
    inv_ok = false;
  }
  rep.add("metric inverse identity h^{ab} h_{bc} = delta", inv_ok);
  return rep;
}

}  // namespace ncg
